#include "starlab/classifiers.hpp"

#include <algorithm>
#include <functional>

#include "starlab/error.hpp"
#include "starlab/parallel.hpp"
#include "starlab/ring_builder.hpp"

namespace starlab {

Classifier::Classifier(StarRing r, ScanOptions opts) : ring_(std::move(r)), opts_(opts) {}

ProjectionAnalysis& Classifier::projection_analysis() {
  if (!projections_) projections_ = std::make_unique<ProjectionAnalysis>(ring_, opts_.jobs);
  return *projections_;
}

AnnihilatorCache& Classifier::annihilator_cache() {
  if (!annihilators_) annihilators_ = std::make_unique<AnnihilatorCache>(ring_, opts_.jobs);
  return *annihilators_;
}

PropertyReport Classifier::make(std::string property) const {
  PropertyReport report;
  report.ring = ring_.label();
  report.property = std::move(property);
  return report;
}

void Classifier::warn_superquadratic(std::string_view property) {
  if (ring_.order() > opts_.limits.warn_order) {
    warnings_.push_back(std::string(property) + " on " + ring_.label() + " (" + std::to_string(ring_.order()) +
                        " elements) is a superquadratic scan");
  }
}

template <typename Fn>
PropertyReport Classifier::memo(const std::string& key, Fn&& compute) {
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  PropertyReport report = make(key);
  {
    ReportTimer timer(report);
    compute(report);
  }
  cache_.emplace(key, report);
  return report;
}

std::optional<Index> Classifier::right_generator(const Bitset& s) {
  if (!right_generated_) {
    auto& cache = annihilator_cache();
    right_generated_.emplace();
    for (const auto& p : projection_analysis().poset().items()) {
      Bitset eR = cache.right_multiples(p.element);
      if (eR.test(p.element)) right_generated_->try_emplace(std::move(eR), p.element);
    }
  }
  if (auto it = right_generated_->find(s); it != right_generated_->end()) return it->second;
  return std::nullopt;
}

std::optional<Index> Classifier::left_generator(const Bitset& s) {
  if (!left_generated_) {
    auto& cache = annihilator_cache();
    left_generated_.emplace();
    for (const auto& p : projection_analysis().poset().items()) {
      Bitset Re = cache.left_multiples(p.element);
      if (Re.test(p.element)) left_generated_->try_emplace(std::move(Re), p.element);
    }
  }
  if (auto it = left_generated_->find(s); it != left_generated_->end()) return it->second;
  return std::nullopt;
}

PropertyReport Classifier::proper_involution() {
  return memo("proper", [&](PropertyReport& report) {
    const auto& r = ring_;
    auto hit = parallel_find_first(r.order(), opts_.jobs, [&](std::size_t i) {
      const auto x = static_cast<Index>(i);
      return x != StarRing::zero() && r.mul(r.star(x), x) == StarRing::zero();
    });
    report.verdict = !hit;
    if (hit) report.set_witness(r, {static_cast<Index>(*hit)});
  });
}

PropertyReport Classifier::semi_proper() {
  return memo("semi-proper", [&](PropertyReport& report) {
    warn_superquadratic("semi-proper");
    const auto& r = ring_;
    auto hit = parallel_find_first(r.order(), opts_.jobs, [&](std::size_t i) {
      const auto a = static_cast<Index>(i);
      if (a == StarRing::zero()) return false;
      const Index as = r.star(a);
      for (Index y = 0; y < r.order(); ++y) {
        if (r.mul(r.mul(a, y), as) != StarRing::zero()) return false;
      }
      return true;
    });
    report.verdict = !hit;
    if (hit) report.set_witness(r, {static_cast<Index>(*hit)});
  });
}

PropertyReport Classifier::reduced() {
  return memo("reduced", [&](PropertyReport& report) {
    const auto& r = ring_;
    auto hit = parallel_find_first(r.order(), opts_.jobs, [&](std::size_t i) {
      const auto x = static_cast<Index>(i);
      return x != StarRing::zero() && r.mul(x, x) == StarRing::zero();
    });
    report.verdict = !hit;
    if (hit) report.set_witness(r, {static_cast<Index>(*hit)});
  });
}

PropertyReport Classifier::abelian() {
  return memo("abelian", [&](PropertyReport& report) {
    const auto& r = ring_;
    auto non_commuting = [&](Index e) -> std::optional<Index> {
      for (Index x = 0; x < r.order(); ++x) {
        if (r.mul(e, x) != r.mul(x, e)) return x;
      }
      return std::nullopt;
    };
    auto hit = parallel_find_first(r.order(), opts_.jobs, [&](std::size_t i) {
      const auto e = static_cast<Index>(i);
      return r.mul(e, e) == e && non_commuting(e).has_value();
    });
    report.verdict = !hit;
    if (hit) {
      const auto e = static_cast<Index>(*hit);
      report.set_witness(r, {e, *non_commuting(e)});
      report.detail = "idempotent " + r.format(e) + " does not commute with " + r.format(*non_commuting(e));
    }
  });
}

PropertyReport Classifier::unity() {
  return memo("unity", [&](PropertyReport& report) {
    report.verdict = ring_.unity().has_value();
    if (report.verdict) {
      report.set_witness(ring_, {*ring_.unity()});
    } else {
      report.detail = "no element is a two-sided identity";
    }
  });
}

PropertyReport Classifier::rickart_star() {
  return memo("rickart-star", [&](PropertyReport& report) {
    auto& cache = annihilator_cache();
    right_generator(Bitset(ring_.order()));  // build the lookup before the parallel scan
    const auto& lookup = *right_generated_;
    auto hit = parallel_find_first(ring_.order(), opts_.jobs, [&](std::size_t i) {
      return !lookup.contains(cache.right(static_cast<Index>(i)));
    });
    report.verdict = !hit;
    if (hit) {
      report.set_witness(ring_, {static_cast<Index>(*hit)});
      report.detail = "r({x}) is not eR for a projection e with xe = 0";
    }
  });
}

PropertyReport Classifier::weakly_rickart_star() {
  return memo("weakly-rickart-star", [&](PropertyReport& report) {
    auto& analysis = projection_analysis();
    std::vector<std::size_t> counts(ring_.order());
    parallel_for(ring_.order(), opts_.jobs,
                 [&](std::size_t i) { counts[i] = analysis.find_rp(static_cast<Index>(i)).candidates.size(); });
    auto missing = std::find(counts.begin(), counts.end(), std::size_t{0});
    report.verdict = missing == counts.end();
    if (!report.verdict) {
      report.set_witness(ring_, {static_cast<Index>(missing - counts.begin())});
      report.detail = "no right projection";
    } else if (auto many = std::find_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 1; });
               many != counts.end()) {
      report.detail = "right projection of " + ring_.format(static_cast<Index>(many - counts.begin())) +
                      " is not unique";
    }
  });
}

PropertyReport Classifier::family_report(std::string property, FamilyMode mode) {
  return memo(property, [&](PropertyReport& report) {
    if (mode != FamilyMode::Subset) warn_superquadratic(property);
    auto family = annihilator_family(annihilator_cache(), mode, opts_.limits);
    report.verdict = true;
    for (const auto& member : family.members) {
      if (!right_generator(member.elements)) {
        report.verdict = false;
        report.set_witness(ring_, member.generators);
        report.detail = std::string("annihilator (") + std::string(to_string(member.provenance)) +
                        ") of the witness set is not generated by a projection";
        break;
      }
    }
    if (report.verdict) report.detail = std::to_string(family.members.size()) + " annihilators checked";
  });
}

PropertyReport Classifier::baer_star() { return family_report("baer-star", FamilyMode::Subset); }

PropertyReport Classifier::quasi_baer_star() { return family_report("quasi-baer-star", FamilyMode::TwoSidedIdeal); }

PropertyReport Classifier::pq_baer_star() {
  return memo("pq-baer-star", [&](PropertyReport& report) {
    warn_superquadratic("pq-baer-star");
    auto& cache = annihilator_cache();
    const auto& right = cache.right_of_right_ideals();
    const auto& left = cache.left_of_left_ideals();
    right_generator(Bitset(ring_.order()));
    left_generator(Bitset(ring_.order()));
    std::optional<Index> right_fail, left_fail;
    for (Index a = 0; a < ring_.order() && !(right_fail && left_fail); ++a) {
      if (!right_fail && !right_generated_->contains(right[a])) right_fail = a;
      if (!left_fail && !left_generated_->contains(left[a])) left_fail = a;
    }
    report.verdict = !right_fail && !left_fail;
    report.detail = std::string("right clause r(aR) = eR: ") + (right_fail ? "false" : "true") +
                    "; left clause l(Ra) = Rf: " + (left_fail ? "false" : "true");
    if (right_fail) {
      report.set_witness(ring_, {*right_fail});
    } else if (left_fail) {
      report.set_witness(ring_, {*left_fail});
    }
  });
}

std::optional<std::pair<Index, Index>> Classifier::symmetric_zero_product_failure() {
  const auto& rr = annihilator_cache().right_of_right_ideals();
  for (Index x = 0; x < ring_.order(); ++x) {
    for (Index y = 0; y < ring_.order(); ++y) {
      // y in r(xR) iff xRy = 0
      if (rr[x].test(y) != rr[y].test(x)) return std::pair{x, y};
    }
  }
  return std::nullopt;
}

PropertyReport Classifier::weakly_pq_baer_star() {
  return memo("weakly-pq-baer-star", [&](PropertyReport& report) {
    warn_superquadratic("weakly-pq-baer-star");
    auto& analysis = projection_analysis();
    auto& cache = annihilator_cache();
    const auto& rr = cache.right_of_right_ideals();
    std::vector<std::optional<Index>> covers(ring_.order());
    parallel_for(ring_.order(), opts_.jobs,
                 [&](std::size_t i) { covers[i] = analysis.find_central_cover(static_cast<Index>(i)); });
    report.verdict = true;
    for (Index x = 0; x < ring_.order(); ++x) {
      if (!covers[x]) {
        report.verdict = false;
        report.set_witness(ring_, {x});
        report.detail = "no central cover";
        return;
      }
      if (rr[x] != cache.right(*covers[x])) {
        report.verdict = false;
        report.set_witness(ring_, {x});
        report.detail = "xRy = 0 and C(x)y = 0 disagree for some y";
        return;
      }
    }
    if (auto sym = symmetric_zero_product_failure()) {
      report.detail = "xRy = 0 iff yRx = 0 fails at (" + ring_.format(sym->first) + ", " +
                      ring_.format(sym->second) + ")";
    } else {
      report.detail = "xRy = 0 iff yRx = 0 holds";
    }
  });
}

std::optional<Index> Classifier::rp_not_central_cover() {
  if (!weakly_rickart_star().verdict || !weakly_pq_baer_star().verdict) {
    throw Error(ErrorCode::HypothesisNotMet, ring_.label() + " must be weakly Rickart* and weakly p.q.-Baer*");
  }
  auto& analysis = projection_analysis();
  std::vector<bool> is_cover(ring_.order(), false);
  for (Index y = 0; y < ring_.order(); ++y) is_cover[analysis.central_cover(y)] = true;
  auto hit = parallel_find_first(ring_.order(), opts_.jobs,
                                 [&](std::size_t i) { return !is_cover[analysis.rp(static_cast<Index>(i))]; });
  if (hit) return static_cast<Index>(*hit);
  return std::nullopt;
}

const std::vector<std::string>& Classifier::property_names() {
  static const std::vector<std::string> names = {
      "proper",         "semi-proper",         "reduced",          "abelian",
      "unity",          "rickart-star",        "weakly-rickart-star", "baer-star",
      "quasi-baer-star", "pq-baer-star",       "weakly-pq-baer-star", "star-ring-axioms"};
  return names;
}

PropertyReport Classifier::run(std::string_view property) {
  if (property == "proper" || property == "proper-involution") return proper_involution();
  if (property == "semi-proper") return semi_proper();
  if (property == "reduced") return reduced();
  if (property == "abelian") return abelian();
  if (property == "unity") return unity();
  if (property == "rickart-star") return rickart_star();
  if (property == "weakly-rickart-star") return weakly_rickart_star();
  if (property == "baer-star") return baer_star();
  if (property == "quasi-baer-star") return quasi_baer_star();
  if (property == "pq-baer-star") return pq_baer_star();
  if (property == "weakly-pq-baer-star") return weakly_pq_baer_star();
  if (property == "star-ring-axioms") {
    return memo("star-ring-axioms", [&](PropertyReport& report) {
      auto audit = validate_star_ring(ring_, opts_);
      report.verdict = audit.verdict;
      report.witness = audit.witness;
      report.witness_literals = audit.witness_literals;
      report.detail = audit.detail;
    });
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown property '" + std::string(property) + "'");
}

PropertyReport is_proper_involution(const StarRing& r, const ScanOptions& o) { return Classifier(r, o).proper_involution(); }
PropertyReport is_semi_proper(const StarRing& r, const ScanOptions& o) { return Classifier(r, o).semi_proper(); }
PropertyReport is_reduced(const StarRing& r, const ScanOptions& o) { return Classifier(r, o).reduced(); }
PropertyReport is_abelian(const StarRing& r, const ScanOptions& o) { return Classifier(r, o).abelian(); }
PropertyReport has_unity(const StarRing& r, const ScanOptions& o) { return Classifier(r, o).unity(); }
PropertyReport is_rickart_star(const StarRing& r, const ScanOptions& o) { return Classifier(r, o).rickart_star(); }
PropertyReport is_weakly_rickart_star(const StarRing& r, const ScanOptions& o) {
  return Classifier(r, o).weakly_rickart_star();
}
PropertyReport is_baer_star(const StarRing& r, const ScanOptions& o) { return Classifier(r, o).baer_star(); }
PropertyReport is_quasi_baer_star(const StarRing& r, const ScanOptions& o) { return Classifier(r, o).quasi_baer_star(); }
PropertyReport is_pq_baer_star(const StarRing& r, const ScanOptions& o) { return Classifier(r, o).pq_baer_star(); }
PropertyReport is_weakly_pq_baer_star(const StarRing& r, const ScanOptions& o) {
  return Classifier(r, o).weakly_pq_baer_star();
}
std::optional<Index> find_rp_not_central_cover(const StarRing& r, const ScanOptions& o) {
  return Classifier(r, o).rp_not_central_cover();
}

bool classify_matrix_ring(std::uint32_t n, std::uint64_t m) {
  if (n < 1 || m < 2) throw Error(ErrorCode::InvalidDescriptor, "classify_matrix_ring needs n >= 1 and m >= 2");
  if (n >= 3) return false;
  std::uint64_t rest = m;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    rest /= p;
    if (rest % p == 0) return false;
    if (n == 2 && p % 4 != 3) return false;
  }
  if (rest > 1 && n == 2 && rest % 4 != 3) return false;
  return true;
}

std::vector<PropertyReport> implication_suite(const std::vector<RingDescriptor>& corpus, const ScanOptions& opts) {
  std::vector<PropertyReport> out;
  for (const auto& d : corpus) {
    Classifier c(build_ring(d, opts.limits), opts);
    const bool rickart = c.rickart_star().verdict;
    const bool weakly_rickart = c.weakly_rickart_star().verdict;
    const bool unital = c.unity().verdict;
    const bool pq = c.pq_baer_star().verdict;
    const bool weakly_pq = c.weakly_pq_baer_star().verdict;
    const bool proper = c.proper_involution().verdict;
    const bool semi = c.semi_proper().verdict;
    const bool abel = c.abelian().verdict;
    const bool red = c.reduced().verdict;
    const bool baer = c.baer_star().verdict;

    auto verdicts = [&] {
      return "rickart=" + std::to_string(rickart) + " weakly_rickart=" + std::to_string(weakly_rickart) +
             " unity=" + std::to_string(unital) + " pq_baer=" + std::to_string(pq) +
             " weakly_pq_baer=" + std::to_string(weakly_pq) + " proper=" + std::to_string(proper) +
             " semi_proper=" + std::to_string(semi) + " abelian=" + std::to_string(abel) +
             " reduced=" + std::to_string(red) + " baer=" + std::to_string(baer);
    };
    auto add = [&](const char* name, bool holds) {
      PropertyReport report;
      report.ring = to_string(d);
      report.property = name;
      report.verdict = holds;
      if (!holds) report.detail = verdicts();
      out.push_back(std::move(report));
    };
    add("implication-a", rickart == (weakly_rickart && unital));
    add("implication-b", pq == (weakly_pq && unital));
    add("implication-c", !rickart || (unital && proper));
    add("implication-d", !pq || (unital && semi));
    add("implication-e", !(abel && rickart) || pq);
    add("implication-f", !(red && pq) || rickart);
    add("implication-g", !pq || !c.symmetric_zero_product_failure().has_value());
    add("finite-collapse", rickart == baer);
  }
  return out;
}

}  // namespace starlab
