#include "starlab/unitification.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

#include "starlab/annihilators.hpp"
#include "starlab/classifiers.hpp"
#include "starlab/error.hpp"
#include "starlab/parallel.hpp"
#include "starlab/ring_builder.hpp"

namespace starlab {

namespace {

constexpr Index kUnassigned = std::numeric_limits<Index>::max();

class PairBackend final : public RingBackend {
 public:
  explicit PairBackend(const ScalarAlgebra& alg) : alg_(alg), width_(alg.scalars().order()) {}

  std::size_t order() const override { return alg_.ring().order() * width_; }

  Index add(Index p, Index q) const override {
    return pack(alg_.ring().add(a(p), a(q)), alg_.scalars().add(l(p), l(q)));
  }
  Index mul(Index p, Index q) const override {
    const StarRing& r = alg_.ring();
    const Index ab = r.mul(a(p), a(q));
    const Index mu_a = alg_.act(l(q), a(p));
    const Index lambda_b = alg_.act(l(p), a(q));
    return pack(r.add(r.add(ab, mu_a), lambda_b), alg_.scalars().mul(l(p), l(q)));
  }
  Index neg(Index p) const override { return pack(alg_.ring().neg(a(p)), alg_.scalars().neg(l(p))); }
  Index star(Index p) const override { return pack(alg_.ring().star(a(p)), alg_.scalars().star(l(p))); }

  ElementLiteral literal(Index p) const override {
    return ElementLiteral::tuple(alg_.ring().literal(a(p)), alg_.scalars().literal(l(p)));
  }
  std::optional<Index> find(const ElementLiteral& lit) const override {
    if (lit.kind != ElementLiteral::Kind::Tuple || lit.items.size() != 2) return std::nullopt;
    auto x = alg_.ring().backend().find(lit.items[0]);
    auto k = alg_.scalars().backend().find(lit.items[1]);
    if (!x || !k) return std::nullopt;
    return pack(*x, *k);
  }
  std::optional<Index> unity_hint() const override { return pack(0, alg_.scalar_unity()); }

 private:
  Index a(Index p) const { return static_cast<Index>(p / width_); }
  Index l(Index p) const { return static_cast<Index>(p % width_); }
  Index pack(Index x, Index k) const { return static_cast<Index>(x * width_ + k); }

  ScalarAlgebra alg_;
  std::size_t width_;
};

class CosetBackend final : public RingBackend {
 public:
  CosetBackend(StarRing extended, std::shared_ptr<const std::vector<Index>> coset_of,
               std::shared_ptr<const std::vector<Index>> representative, Index unity)
      : extended_(std::move(extended)),
        coset_of_(std::move(coset_of)),
        rep_(std::move(representative)),
        unity_(unity) {}

  std::size_t order() const override { return rep_->size(); }
  Index add(Index x, Index y) const override { return cls(extended_.add(rep(x), rep(y))); }
  Index mul(Index x, Index y) const override { return cls(extended_.mul(rep(x), rep(y))); }
  Index neg(Index x) const override { return cls(extended_.neg(rep(x))); }
  Index star(Index x) const override { return cls(extended_.star(rep(x))); }

  ElementLiteral literal(Index x) const override { return extended_.literal(rep(x)); }
  std::optional<Index> find(const ElementLiteral& lit) const override {
    auto p = extended_.backend().find(lit);
    if (!p) return std::nullopt;
    return cls(*p);
  }
  std::optional<Index> unity_hint() const override { return unity_; }

 private:
  Index rep(Index x) const { return (*rep_)[x]; }
  Index cls(Index p) const { return (*coset_of_)[p]; }

  StarRing extended_;
  std::shared_ptr<const std::vector<Index>> coset_of_;
  std::shared_ptr<const std::vector<Index>> rep_;
  Index unity_;
};

std::string extended_label(const ScalarAlgebra& alg) {
  return "ext(" + alg.ring().label() + "," + alg.scalars().label() + ")";
}

std::string join_literals(const StarRing& r, const std::vector<Index>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += r.format(xs[i]);
  }
  return out;
}

// Lowest nonzero pair (λ, a) with λa = 0.
std::optional<std::pair<Index, Index>> torsion_witness(const ScalarAlgebra& alg) {
  for (Index lambda = 1; lambda < alg.scalars().order(); ++lambda) {
    for (Index a = 1; a < alg.ring().order(); ++a) {
      if (alg.act(lambda, a) == StarRing::zero()) return std::pair{lambda, a};
    }
  }
  return std::nullopt;
}

}  // namespace

Index pair_index(const ScalarAlgebra& alg, PairElement p) {
  return static_cast<Index>(std::size_t{p.a} * alg.scalars().order() + p.lambda);
}

PairElement split_pair(const ScalarAlgebra& alg, Index pair) {
  const auto width = alg.scalars().order();
  return {static_cast<Index>(pair / width), static_cast<Index>(pair % width)};
}

StarRing build_r1(const ScalarAlgebra& alg, const Limits& limits) {
  const std::size_t order = alg.ring().order() * alg.scalars().order();
  if (order > limits.max_order) {
    throw Error(ErrorCode::OrderCapExceeded, extended_label(alg) + " has " + std::to_string(order) +
                                                 " elements, above the cap of " + std::to_string(limits.max_order));
  }
  return StarRing(std::make_shared<PairBackend>(alg), extended_label(alg), std::nullopt, limits);
}

Index scale_pair(const ScalarAlgebra& alg, Index mu, Index pair) {
  const auto p = split_pair(alg, pair);
  return pair_index(alg, {alg.act(mu, p.a), alg.scalars().mul(mu, p.lambda)});
}

KernelN compute_kernel(const ScalarAlgebra& alg, const StarRing& r1, const ScanOptions& opts) {
  const StarRing& r = alg.ring();
  KernelN kernel{Bitset(r1.order())};
  std::vector<std::uint8_t> in(r1.order(), 0);
  parallel_for(r1.order(), opts.jobs, [&](std::size_t p) {
    const auto [a, lambda] = split_pair(alg, static_cast<Index>(p));
    for (Index x = 0; x < r.order(); ++x) {
      if (r.add(r.mul(a, x), alg.act(lambda, x)) != StarRing::zero()) return;
    }
    in[p] = 1;
  });
  for (std::size_t p = 0; p < in.size(); ++p) {
    if (in[p]) kernel.members.set(p);
  }

  // Guard: N must be a two-sided ideal of R ⊕ K. Exhaustive up to a budget,
  // sampled beyond it.
  const auto members = kernel.members.members();
  auto fail = [&](const std::string& what, std::vector<Index> witness) {
    throw Error(ErrorCode::VerificationFailed, "kernel is not " + what + ": " + join_literals(r1, witness),
                std::move(witness));
  };
  constexpr std::size_t kBudget = 4'000'000;
  std::mt19937_64 rng(0x5eed);
  if (members.size() * members.size() <= kBudget) {
    for (Index n : members) {
      if (!kernel.members.test(r1.neg(n))) fail("closed under negation", {n});
      for (Index m : members) {
        if (!kernel.members.test(r1.add(n, m))) fail("closed under addition", {n, m});
      }
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    for (std::size_t s = 0; s < kBudget / 16; ++s) {
      const Index n = members[pick(rng)];
      const Index m = members[pick(rng)];
      if (!kernel.members.test(r1.add(n, m))) fail("closed under addition", {n, m});
    }
  }
  const bool full = members.size() * r1.order() <= kBudget;
  const std::size_t samples = full ? members.size() * r1.order() : kBudget / 16;
  std::uniform_int_distribution<std::size_t> pick_n(0, members.size() - 1);
  std::uniform_int_distribution<Index> pick_p(0, static_cast<Index>(r1.order() - 1));
  for (std::size_t s = 0; s < samples; ++s) {
    const Index n = full ? members[s / r1.order()] : members[pick_n(rng)];
    const Index p = full ? static_cast<Index>(s % r1.order()) : pick_p(rng);
    if (!kernel.members.test(r1.mul(p, n))) fail("a left ideal", {p, n});
    if (!kernel.members.test(r1.mul(n, p))) fail("a right ideal", {n, p});
  }
  return kernel;
}

std::string_view to_string(InvolutionSource source) {
  switch (source) {
    case InvolutionSource::ProperInvolution: return "proper involution";
    case InvolutionSource::SemiProperInvolution: return "semi-proper involution";
    case InvolutionSource::DirectCheck: return "direct star-closure check";
  }
  return "?";
}

QuotientRing build_quotient(const ScalarAlgebra& alg, const ScanOptions& opts) {
  StarRing r1 = build_r1(alg, opts.limits);
  KernelN kernel = compute_kernel(alg, r1, opts);
  const auto members = kernel.members.members();

  for (Index n : members) {
    if (!kernel.members.test(r1.star(n))) {
      throw Error(ErrorCode::InvolutionNotWellDefined,
                  "kernel is not closed under the involution: " + r1.format(n) + " is in it, " +
                      r1.format(r1.star(n)) + " is not",
                  {n});
    }
  }

  auto coset_of = std::make_shared<std::vector<Index>>(r1.order(), kUnassigned);
  auto reps = std::make_shared<std::vector<Index>>();
  for (Index p = 0; p < r1.order(); ++p) {
    if ((*coset_of)[p] != kUnassigned) continue;
    const auto c = static_cast<Index>(reps->size());
    reps->push_back(p);
    for (Index n : members) (*coset_of)[r1.add(p, n)] = c;
  }
  const Index unity = (*coset_of)[pair_index(alg, {0, alg.scalar_unity()})];

  QuotientRing q{r1,
                 std::move(kernel),
                 StarRing(std::make_shared<CosetBackend>(r1, coset_of, reps, unity), r1.label() + "/N", std::nullopt,
                          opts.limits),
                 coset_of,
                 reps,
                 InvolutionSource::DirectCheck};

  if (is_proper_involution(alg.ring(), opts).verdict) {
    q.involution_source = InvolutionSource::ProperInvolution;
  } else if (is_semi_proper(alg.ring(), opts).verdict) {
    q.involution_source = InvolutionSource::SemiProperInvolution;
  }

  // Representative independence. Every coset pair is checked with randomly
  // chosen members when the quotient is small, a random sample otherwise.
  const StarRing& qr = q.ring;
  std::mt19937_64 rng(0xc05e7);
  std::uniform_int_distribution<std::size_t> pick_n(0, members.size() - 1);
  auto member = [&](Index c) { return r1.add((*reps)[c], members[pick_n(rng)]); };
  auto check = [&](Index x, Index y) {
    const Index p = member(x);
    const Index s = member(y);
    if ((*coset_of)[r1.add(p, s)] != qr.add(x, y) || (*coset_of)[r1.mul(p, s)] != qr.mul(x, y)) {
      throw Error(ErrorCode::VerificationFailed,
                  "quotient operations depend on the representative at " + r1.format(p) + ", " + r1.format(s),
                  {p, s});
    }
  };
  if (qr.order() <= 512) {
    for (Index x = 0; x < qr.order(); ++x) {
      for (Index y = 0; y < qr.order(); ++y) check(x, y);
    }
  } else {
    std::uniform_int_distribution<Index> pick_c(0, static_cast<Index>(qr.order() - 1));
    for (int s = 0; s < 20'000; ++s) check(pick_c(rng), pick_c(rng));
  }
  for (Index p = 0; p < r1.order(); ++p) {
    if ((*coset_of)[r1.star(p)] != qr.star((*coset_of)[p])) {
      throw Error(ErrorCode::InvolutionNotWellDefined, "involution depends on the representative at " + r1.format(p),
                  {p});
    }
  }
  if (qr.unity() != unity) {
    throw Error(ErrorCode::VerificationFailed, "[0,1] is not the unity of the quotient", {unity});
  }
  return q;
}

Index embed(const ScalarAlgebra& alg, const QuotientRing& q, Index a) { return q.coset({a, 0}, alg); }

InjectivityVerdict embedding_injectivity(const ScalarAlgebra& alg, const QuotientRing& q) {
  const StarRing& r = alg.ring();
  std::vector<Index> all(r.order());
  for (Index i = 0; i < r.order(); ++i) all[i] = i;
  const auto total = left_annihilator(r, all).elements.members();
  InjectivityVerdict verdict;
  if (total.size() > 1) {
    verdict.injective = false;
    verdict.witness = total[1];
  }
  // Cross-check against the map itself: a ↦ [a,0] collapses exactly L(R).
  for (Index a = 1; a < r.order(); ++a) {
    const bool collapses = embed(alg, q, a) == StarRing::zero();
    if (collapses != std::binary_search(total.begin(), total.end(), a)) {
      throw Error(ErrorCode::VerificationFailed,
                  "embedding kernel differs from the total left annihilator at " + r.format(a), {a});
    }
  }
  return verdict;
}

PropertyReport check_r1_lemmas(const ScalarAlgebra& alg, const ScanOptions& opts) {
  if (!alg.scalars_domain() || !alg.torsion_free()) {
    throw Error(ErrorCode::HypothesisNotMet,
                alg.label() + ": the extension lemmas need an integral domain K and a torsion-free action");
  }
  const StarRing& r = alg.ring();
  const StarRing r1 = build_r1(alg, opts.limits);
  PropertyReport report;
  report.ring = alg.label();
  report.property = "extension-lemmas";
  ReportTimer timer(report);

  const bool proper = is_proper_involution(r, opts).verdict;
  if (proper) {
    auto bad = parallel_find_first(r1.order(), opts.jobs, [&](std::size_t p) {
      const auto x = static_cast<Index>(p);
      return x != 0 && r1.mul(r1.star(x), x) == StarRing::zero();
    });
    if (bad) {
      report.detail = "involution of the extension is not proper";
      report.set_witness(r1, {static_cast<Index>(*bad)});
      return report;
    }
  }

  ProjectionAnalysis in_r(r, opts.jobs);
  ProjectionAnalysis in_r1(r1, opts.jobs);
  auto bad = parallel_find_first(r.order(), opts.jobs, [&](std::size_t i) {
    const auto x = static_cast<Index>(i);
    auto below = in_r.find_rp(x).candidates;
    for (auto& e : below) e = pair_index(alg, {e, 0});
    const auto above = in_r1.find_rp(pair_index(alg, {x, 0})).candidates;
    std::vector<Index> above_embedded;
    for (Index c : above) {
      if (split_pair(alg, c).lambda == 0) above_embedded.push_back(c);
    }
    if (below != above_embedded) return true;
    return below.size() == 1 && above.size() != 1;
  });
  if (bad) {
    report.detail = "right projection of (x,0) in the extension differs from (RP(x),0)";
    report.set_witness(r, {static_cast<Index>(*bad)});
    return report;
  }
  report.verdict = true;
  report.detail = proper ? "involution proper in both; RP((x,0)) = (RP(x),0) for every x"
                         : "RP((x,0)) = (RP(x),0) for every x";
  return report;
}

std::string_view to_string(FormulaRoute route) {
  switch (route) {
    case FormulaRoute::Embedded: return "embedded";
    case FormulaRoute::ScaledUnit: return "scaled-unit";
    case FormulaRoute::ThroughStar: return "through-star";
    case FormulaRoute::BruteOnly: return "search-only";
  }
  return "?";
}

QuotientCalculus::QuotientCalculus(const ScalarAlgebra& alg, const QuotientRing& q, unsigned jobs)
    : alg_(alg), q_(q), ring_(alg.ring(), jobs), quotient_(q.ring, jobs) {
  const StarRing& qr = q.ring;
  quotient_proper_ = true;
  for (Index x = 1; x < qr.order(); ++x) {
    if (qr.mul(qr.star(x), x) == StarRing::zero()) {
      quotient_proper_ = false;
      break;
    }
  }
}

Index QuotientCalculus::rp_formula(Index pair) const {
  const StarRing& r = alg_.ring();
  const auto [a, lambda] = split_pair(alg_, pair);
  if (lambda == 0) return embed(alg_, q_, ring_.rp(a));
  if (r.star(a) != a || alg_.scalars().star(lambda) != lambda) {
    throw Error(ErrorCode::HypothesisNotMet,
                "the scaled-unit formula needs a self-adjoint representative, got " + q_.extended.format(pair), {pair});
  }
  const Index g = largest_eigen_projection(alg_, ring_, a, alg_.scalars().neg(lambda), false);
  return q_.coset({r.neg(g), alg_.scalar_unity()}, alg_);
}

Index QuotientCalculus::cover_formula(Index pair) const {
  const auto [a, lambda] = split_pair(alg_, pair);
  if (lambda == 0) return embed(alg_, q_, ring_.central_cover(a));
  const Index g = largest_eigen_projection(alg_, ring_, a, alg_.scalars().neg(lambda), true);
  return q_.coset({alg_.ring().neg(g), alg_.scalar_unity()}, alg_);
}

namespace {

// Members of a coset in ascending pair order.
std::vector<Index> coset_members(const QuotientRing& q, Index coset) {
  std::vector<Index> out;
  const Index rep = (*q.representative)[coset];
  for (Index n : q.kernel.members.members()) out.push_back(q.extended.add(rep, n));
  std::sort(out.begin(), out.end());
  return out;
}

[[noreturn]] void mismatch(const QuotientRing& q, std::string_view what, Index coset, Index formula, Index brute) {
  const StarRing& qr = q.ring;
  throw Error(ErrorCode::FormulaMismatch,
              std::string(what) + " of " + qr.format(coset) + ": formula gives " + qr.format(formula) +
                  ", search gives " + qr.format(brute),
              {coset, formula, brute});
}

}  // namespace

QuotientProjection QuotientCalculus::rp_in_quotient(Index coset) const {
  const Index brute = quotient_.rp(coset);
  const StarRing& r1 = q_.extended;
  const auto members = coset_members(q_, coset);
  QuotientProjection out{brute, FormulaRoute::BruteOnly, std::nullopt};

  auto settle = [&](FormulaRoute route, Index pair, Index value) {
    if (value != brute) mismatch(q_, "RP", coset, value, brute);
    out.route = route;
    out.representative = pair;
    return out;
  };
  for (Index p : members) {
    if (split_pair(alg_, p).lambda == 0) return settle(FormulaRoute::Embedded, p, rp_formula(p));
  }
  for (Index p : members) {
    if (r1.star(p) == p) return settle(FormulaRoute::ScaledUnit, p, rp_formula(p));
  }
  if (quotient_proper_) {
    const Index rep = (*q_.representative)[coset];
    const Index square = r1.mul(r1.star(rep), rep);
    const auto inner = rp_in_quotient(q_.ring.mul(q_.ring.star(coset), coset));
    return settle(FormulaRoute::ThroughStar, square, inner.value);
  }
  return out;
}

QuotientProjection QuotientCalculus::cover_in_quotient(Index coset) const {
  const Index brute = quotient_.central_cover(coset);
  const auto members = coset_members(q_, coset);
  const StarRing& qr = q_.ring;
  // xQy = 0 iff ey = 0, over every y.
  for (Index y = 0; y < qr.order(); ++y) {
    bool kills = true;
    for (Index z = 0; z < qr.order() && kills; ++z) kills = qr.mul(qr.mul(coset, z), y) == StarRing::zero();
    if (kills != (qr.mul(brute, y) == StarRing::zero())) {
      throw Error(ErrorCode::FormulaMismatch,
                  "xQy = 0 and C(x)y = 0 disagree at x = " + qr.format(coset) + ", y = " + qr.format(y), {coset, y});
    }
  }
  const Index pair = members.front();
  std::optional<Index> zero_scalar;
  for (Index p : members) {
    if (split_pair(alg_, p).lambda == 0) {
      zero_scalar = p;
      break;
    }
  }
  const Index used = zero_scalar.value_or(pair);
  const Index value = cover_formula(used);
  if (value != brute) mismatch(q_, "C", coset, value, brute);
  return {brute, zero_scalar ? FormulaRoute::Embedded : FormulaRoute::ScaledUnit, used};
}

std::string_view to_string(UnitificationMode mode) {
  return mode == UnitificationMode::Rickart ? "rickart" : "pqbaer";
}

std::size_t EmbeddingReport::preserved_rows() const {
  return static_cast<std::size_t>(std::count_if(preservation.begin(), preservation.end(),
                                                [](const PreservationRow& row) { return row.ok; }));
}

nlohmann::json to_json(const EmbeddingReport& report) {
  nlohmann::json j;
  j["ring"] = report.ring;
  j["scalars"] = report.scalars;
  j["mode"] = std::string(to_string(report.mode));
  nlohmann::json hyp = nlohmann::json::object();
  for (const auto& [name, value] : report.hypotheses) hyp[name] = value;
  j["hypotheses"] = hyp;
  j["characteristic"] = report.characteristic;
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& b : report.bounds) {
    bounds.push_back({{"lambda", to_json(b.lambda)}, {"e", to_json(b.e)}, {"least", b.least}});
  }
  j["bounds"] = bounds;
  j["kernel_order"] = report.kernel_order;
  j["quotient_order"] = report.quotient_order;
  j["injective"] = report.injective;
  if (report.injectivity_witness) j["injectivity_witness"] = to_json(*report.injectivity_witness);
  j["quotient_in_class"] = report.quotient_in_class;
  const bool rickart = report.mode == UnitificationMode::Rickart;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.preservation) {
    rows.push_back({{"a", to_json(row.a)},
                    {rickart ? "rp_R" : "cover_R", to_json(row.in_ring)},
                    {rickart ? "rp_Q" : "cover_Q", to_json(row.in_quotient)},
                    {"ok", row.ok}});
  }
  j["preservation"] = rows;
  j["preserved"] = std::to_string(report.preserved_rows()) + "/" + std::to_string(report.preservation.size());
  j["formula_checks"] = report.formula_checks;
  j["flags"] = report.flags;
  j["verdict"] = report.verdict;
  if (report.failed_claim) {
    j["failed_claim"] = *report.failed_claim;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& lit : report.failure_witness) w.push_back(to_json(lit));
    j["failure_witness"] = w;
  }
  return j;
}

std::string to_text(const EmbeddingReport& report) {
  std::ostringstream out;
  out << report.ring << " over " << report.scalars << " [" << to_string(report.mode) << "]\n";
  for (const auto& flag : report.flags) out << "  ! " << flag << "\n";
  out << "  hypotheses:";
  for (const auto& [name, value] : report.hypotheses) out << ' ' << name << '=' << (value ? "yes" : "no");
  out << "\n  characteristic " << report.characteristic << "\n";
  for (const auto& b : report.bounds) {
    out << "  e_" << to_string(b.lambda) << " = " << to_string(b.e)
        << (b.least ? "" : " (lowest upper bound, not least)") << "\n";
  }
  out << "  kernel order " << report.kernel_order << ", quotient order " << report.quotient_order << "\n";
  out << "  embedding " << (report.injective ? "injective" : "not injective");
  if (report.injectivity_witness) out << " (" << to_string(*report.injectivity_witness) << " collapses)";
  out << "\n  quotient " << (report.mode == UnitificationMode::Rickart ? "Rickart*" : "p.q.-Baer*") << ": "
      << (report.quotient_in_class ? "yes" : "no") << "\n";
  out << "  preservation " << report.preserved_rows() << "/" << report.preservation.size() << ", formula checks "
      << report.formula_checks << "\n";
  for (const auto& row : report.preservation) {
    if (!row.ok) {
      out << "    mismatch at " << to_string(row.a) << ": " << to_string(row.in_ring) << " vs "
          << to_string(row.in_quotient) << "\n";
    }
  }
  if (report.failed_claim) out << "  FAILED: " << *report.failed_claim << "\n";
  out << "  verdict " << (report.verdict ? "pass" : "fail") << "\n";
  return out.str();
}

namespace {

// Thrown internally to stop at the first failed claim.
struct ClaimFailure {
  std::string claim;
  std::vector<ElementLiteral> witness;
};

template <typename... Lits>
[[noreturn]] void fail_claim(std::string claim, Lits... lits) {
  throw ClaimFailure{std::move(claim), {std::move(lits)...}};
}

}  // namespace

EmbeddingReport verify_unitification(const ScalarAlgebra& alg, UnitificationMode mode, const ScanOptions& opts) {
  const StarRing& r = alg.ring();
  const StarRing& k = alg.scalars();
  const bool rickart = mode == UnitificationMode::Rickart;

  EmbeddingReport report;
  report.ring = r.label();
  report.scalars = k.label();
  report.mode = mode;
  report.characteristic = characteristic(r);

  Classifier base(r, opts);
  ProjectionAnalysis& analysis = base.projection_analysis();
  if (rickart) {
    auto weak = base.weakly_rickart_star();
    if (!weak.verdict) {
      throw Error(ErrorCode::HypothesisNotMet, r.label() + " is not weakly Rickart*: " + weak.detail, weak.witness);
    }
    auto table = condition3_witnesses(alg, analysis);
    if (!table.holds()) {
      const auto [lambda, x] = *table.failure;
      throw Error(ErrorCode::HypothesisNotMet,
                  "condition (3) fails: no projection dominates LP(x) for every x with " + k.format(lambda) +
                      "·x = 0, stuck at x = " + r.format(x),
                  {lambda, x});
    }
    report.hypotheses = {{"weakly_rickart", true}, {"condition3", true}};
    for (const auto& b : table.bounds) report.bounds.push_back({k.literal(b.lambda), r.literal(b.bound), b.least});
  } else {
    auto weak = base.weakly_pq_baer_star();
    if (!weak.verdict) {
      throw Error(ErrorCode::HypothesisNotMet, r.label() + " is not weakly p.q.-Baer*: " + weak.detail,
                  weak.witness);
    }
    auto table = condition_beta_witnesses(alg, analysis);
    if (!table.holds()) {
      const auto [lambda, x] = *table.failure;
      throw Error(ErrorCode::HypothesisNotMet,
                  "condition (beta) fails: no projection dominates C(x) for every x with " + k.format(lambda) +
                      "·x = 0, stuck at x = " + r.format(x),
                  {lambda, x});
    }
    report.hypotheses = {{"weakly_pq_baer", true}, {"condition_beta", true}};
    for (const auto& b : table.bounds) report.bounds.push_back({k.literal(b.lambda), r.literal(b.bound), b.least});
  }
  const bool proper = base.proper_involution().verdict;
  const bool semi_proper = base.semi_proper().verdict;
  report.hypotheses.emplace_back("K_domain", alg.scalars_domain());
  report.hypotheses.emplace_back("torsion_free", alg.torsion_free());
  report.hypotheses.emplace_back("proper", proper);
  report.hypotheses.emplace_back("semi_proper", semi_proper);
  report.hypotheses.emplace_back("unity", r.unity().has_value());

  if (!alg.scalars_domain()) report.flags.push_back("K is not an integral domain");
  if (auto t = torsion_witness(alg)) {
    report.flags.push_back("torsion present (" + k.format(t->first) + "·" + r.format(t->second) + " = 0)");
  }
  if (!alg.scalars_domain() || !alg.torsion_free()) {
    report.flags.push_back("outside the integral-domain and torsion-free routes; commutative K case");
  }

  const QuotientRing q = build_quotient(alg, opts);
  const StarRing& qr = q.ring;
  const StarRing& r1 = q.extended;
  report.kernel_order = q.kernel.order();
  report.quotient_order = qr.order();
  const auto inj = embedding_injectivity(alg, q);
  report.injective = inj.injective;
  if (inj.witness) report.injectivity_witness = r.literal(*inj.witness);

  try {
    if (report.quotient_order * report.kernel_order != r.order() * k.order()) {
      fail_claim("|quotient|·|N| = |R|·|K|");
    }
    // μ(a,λ) agrees with multiplication by (0,μ) on either side.
    for (Index mu = 0; mu < k.order(); ++mu) {
      const Index scalar = pair_index(alg, {0, mu});
      for (Index p = 0; p < r1.order(); ++p) {
        const Index scaled = scale_pair(alg, mu, p);
        if (scaled != r1.mul(scalar, p) || scaled != r1.mul(p, scalar)) {
          fail_claim("scalar multiplication agrees with multiplication by (0,μ)", k.literal(mu), r1.literal(p));
        }
      }
    }
    // a ↦ [a,0] is a *-homomorphism.
    auto bad_hom = parallel_find_first(r.order(), opts.jobs, [&](std::size_t i) {
      const auto a = static_cast<Index>(i);
      const Index ea = embed(alg, q, a);
      if (qr.star(ea) != embed(alg, q, r.star(a))) return true;
      for (Index b = 0; b < r.order(); ++b) {
        const Index eb = embed(alg, q, b);
        if (qr.add(ea, eb) != embed(alg, q, r.add(a, b)) || qr.mul(ea, eb) != embed(alg, q, r.mul(a, b))) return true;
      }
      return false;
    });
    if (bad_hom) fail_claim("embedding is a *-homomorphism", r.literal(static_cast<Index>(*bad_hom)));

    Classifier quotient(qr, opts);
    if (proper) {
      auto p = quotient.proper_involution();
      if (!p.verdict) fail_claim("quotient involution is proper", p.witness_literals.at(0));
    }

    QuotientCalculus calc(alg, q, opts.jobs);
    if (rickart) {
      auto cls = quotient.rickart_star();
      report.quotient_in_class = cls.verdict;
      if (!cls.verdict) fail_claim("quotient is Rickart*", cls.witness_literals.empty() ? qr.literal(0) : cls.witness_literals[0]);
    } else {
      auto cls = quotient.pq_baer_star();
      report.quotient_in_class = cls.verdict;
      if (!cls.verdict) fail_claim("quotient is p.q.-Baer*", cls.witness_literals.empty() ? qr.literal(0) : cls.witness_literals[0]);
      auto weak = quotient.weakly_pq_baer_star();
      if (!weak.verdict) fail_claim("xQy = 0 iff C(x)y = 0 in the quotient", weak.witness_literals.empty() ? qr.literal(0) : weak.witness_literals[0]);
    }

    // Search results in the quotient, per coset.
    std::vector<Index> brute(qr.order());
    parallel_for(qr.order(), opts.jobs, [&](std::size_t c) {
      const auto x = static_cast<Index>(c);
      brute[c] = rickart ? calc.quotient_analysis().rp(x) : calc.quotient_analysis().central_cover(x);
    });

    // Preservation for every a in R.
    report.preservation.resize(r.order());
    for (Index a = 0; a < r.order(); ++a) {
      const Index in_ring = rickart ? analysis.rp(a) : analysis.central_cover(a);
      const Index in_quotient = brute[embed(alg, q, a)];
      report.preservation[a] = {r.literal(a), r.literal(in_ring), qr.literal(in_quotient),
                                in_quotient == embed(alg, q, in_ring)};
    }
    for (const auto& row : report.preservation) {
      if (!row.ok) fail_claim(rickart ? "RP([a,0]) = [RP(a),0]" : "C([a,0]) = [C(a),0]", row.a);
    }

    // Formula against search at every representative where it applies.
    std::vector<std::size_t> checks(chunk_count(r1.order(), opts.jobs), 0);
    std::vector<std::optional<Index>> first_bad(checks.size());
    parallel_chunks(r1.order(), opts.jobs, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
      for (std::size_t i = begin; i < end; ++i) {
        const auto p = static_cast<Index>(i);
        const auto [a, lambda] = split_pair(alg, p);
        Index value = 0;
        if (rickart) {
          if (lambda != 0 && (r.star(a) != a || k.star(lambda) != lambda)) continue;
          value = calc.rp_formula(p);
        } else {
          value = calc.cover_formula(p);
        }
        ++checks[chunk];
        if (value != brute[(*q.coset_of)[p]]) {
          first_bad[chunk] = p;
          return;
        }
      }
    });
    for (const auto& bad : first_bad) {
      if (bad) {
        fail_claim(rickart ? "RP formula agrees with search" : "C formula agrees with search", r1.literal(*bad));
      }
    }
    for (auto c : checks) report.formula_checks += c;

    // RP(x) = RP(x*x) in the quotient when its involution is proper.
    if (rickart && calc.quotient_proper()) {
      for (Index x = 0; x < qr.order(); ++x) {
        if (brute[x] != brute[qr.mul(qr.star(x), x)]) fail_claim("RP(x) = RP(x*x) in the quotient", qr.literal(x));
      }
    }
    report.verdict = true;
  } catch (ClaimFailure& failure) {
    report.verdict = false;
    report.failed_claim = std::move(failure.claim);
    report.failure_witness = std::move(failure.witness);
  } catch (const Error& e) {
    // Lookups inside the quotient (NoRightProjection, NoGreatestElement, ...)
    // count as failed claims of the report.
    report.verdict = false;
    report.failed_claim = std::string(to_string(e.code())) + ": " + e.detail();
  }
  return report;
}

void require_verified(const EmbeddingReport& report) {
  if (report.verdict) return;
  throw Error(ErrorCode::VerificationFailed,
              report.ring + " over " + report.scalars + ": " + report.failed_claim.value_or("verification failed"));
}

PropertyReport check_unital_collapse(const ScalarAlgebra& alg, const QuotientRing& q) {
  const StarRing& r = alg.ring();
  const StarRing& qr = q.ring;
  PropertyReport report;
  report.ring = alg.label();
  report.property = "unital-collapse";
  ReportTimer timer(report);
  if (!r.unity()) throw Error(ErrorCode::HypothesisNotMet, r.label() + " has no unity");
  if (!embedding_injectivity(alg, q).injective) {
    throw Error(ErrorCode::HypothesisNotMet, r.label() + " has a nonzero total left annihilator");
  }
  if (qr.order() != r.order()) {
    report.detail = "quotient order " + std::to_string(qr.order()) + " differs from " + std::to_string(r.order());
    return report;
  }
  std::vector<std::uint8_t> hit(qr.order(), 0);
  for (Index a = 0; a < r.order(); ++a) {
    const Index ea = embed(alg, q, a);
    if (hit[ea]) {
      report.detail = "embedding is not injective";
      report.set_witness(r, {a});
      return report;
    }
    hit[ea] = 1;
    if (qr.star(ea) != embed(alg, q, r.star(a))) {
      report.detail = "embedding does not commute with the involution";
      report.set_witness(r, {a});
      return report;
    }
  }
  for (Index a = 0; a < r.order(); ++a) {
    const Index ea = embed(alg, q, a);
    for (Index b = 0; b < r.order(); ++b) {
      const Index eb = embed(alg, q, b);
      if (qr.add(ea, eb) != embed(alg, q, r.add(a, b)) || qr.mul(ea, eb) != embed(alg, q, r.mul(a, b))) {
        report.detail = "embedding is not a ring homomorphism";
        report.set_witness(r, {a, b});
        return report;
      }
    }
  }
  report.verdict = true;
  report.detail = "a -> [a,0] is a *-isomorphism onto the quotient";
  return report;
}

}  // namespace starlab
