// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "starlab/classifiers.hpp"
#include "starlab/cli.hpp"
#include "starlab/corpus.hpp"
#include "starlab/dsl.hpp"
#include "starlab/error.hpp"
#include "starlab/projections.hpp"
#include "starlab/ring_builder.hpp"
#include "starlab/scalar_algebra.hpp"
#include "starlab/unitification.hpp"

using namespace starlab;

namespace {

// Returns an empty string on success, otherwise the reason.
using Criterion = std::function<std::string(std::ostringstream& summary)>;

ScanOptions options(std::size_t max_order = Limits{}.max_order) {
  ScanOptions o;
  o.jobs = std::max(1u, std::thread::hardware_concurrency());
  o.limits.max_order = max_order;
  return o;
}

StarRing ring(const std::string& expr, const ScanOptions& opts = options()) {
  return build_ring(parse_ring_expr(expr), opts.limits);
}

ScalarAlgebra natural(const std::string& r, const std::string& k, const ScanOptions& opts = options()) {
  return build_scalar_algebra(ring(r, opts), ring(k, opts), NaturalAction{});
}

std::string join(const std::set<std::uint64_t>& s) {
  std::string out = "{";
  for (auto v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

bool has_flag(const EmbeddingReport& report, const std::string& prefix) {
  return std::any_of(report.flags.begin(), report.flags.end(),
                     [&](const std::string& f) { return f.rfind(prefix, 0) == 0; });
}

std::string scan_cor(std::ostringstream& summary) {
  const std::vector<std::pair<std::uint32_t, std::uint64_t>> rows{{1, 12}, {2, 7}};
  const std::vector<std::set<std::uint64_t>> expected{{2, 3, 5, 6, 7, 10, 11}, {3, 7}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto [n, m_max] = rows[i];
    std::set<std::uint64_t> truth;
    for (std::uint64_t m = 2; m <= m_max; ++m) {
      const bool arithmetic = classify_matrix_ring(n, m);
      const auto d = n == 1 ? RingDescriptor::cyclic(m) : RingDescriptor::matrix(n, RingDescriptor::cyclic(m));
      const bool brute = is_baer_star(build_ring(d, options().limits), options()).verdict;
      if (arithmetic != brute) {
        return "disagreement at n=" + std::to_string(n) + ", m=" + std::to_string(m);
      }
      if (brute) truth.insert(m);
    }
    if (truth != expected[i]) return "n=" + std::to_string(n) + " truth set " + join(truth);
    summary << " n=" << n << " " << join(truth);
  }
  return {};
}

std::string example_witness(std::ostringstream& summary) {
  const StarRing r = ring("M(2,Z(3))");
  Classifier c(r, options());
  const auto x = c.rp_not_central_cover();
  if (!x) return "no witness";
  const auto& pa = c.projection_analysis();
  const Index e = pa.rp(*x);
  for (Index y = 0; y < r.order(); ++y) {
    if (pa.central_cover(y) == e) return "RP(x) is the cover of " + r.format(y);
  }
  for (const char* p : {"baer-star", "rickart-star", "pq-baer-star"}) {
    if (!c.run(p).verdict) return std::string(p) + " is false";
  }
  summary << " x=" << r.format(*x) << " RP(x)=" << r.format(e);
  return {};
}

std::string rickart_beyond(std::ostringstream& summary) {
  struct Case {
    const char* r;
    const char* k;
    std::size_t rows;
  };
  for (const Case& c : {Case{"Z(6)", "Z(6)", 6}, Case{"M(2,Z(3))", "Z(6)", 81}}) {
    const auto report = verify_unitification(natural(c.r, c.k), UnitificationMode::Rickart, options());
    const std::string name = std::string(c.r) + "/" + c.k;
    if (!report.verdict) return name + ": " + report.failed_claim.value_or("failed");
    if (!has_flag(report, "K is not an integral domain") && !has_flag(report, "torsion present")) {
      return name + ": neither route flag raised";
    }
    if (report.preservation.size() != c.rows || report.preserved_rows() != c.rows) {
      return name + ": preserved " + std::to_string(report.preserved_rows());
    }
    summary << " " << name << " " << report.preserved_rows() << "/" << c.rows;
  }
  return {};
}

std::string pq_baer_side(std::ostringstream& summary) {
  struct Case {
    const char* r;
    const char* k;
  };
  for (const Case& c : {Case{"M(2,Z(3))", "Z(3)"}, Case{"Z(6)", "Z(6)"}}) {
    const auto report = verify_unitification(natural(c.r, c.k), UnitificationMode::PqBaer, options());
    const std::string name = std::string(c.r) + "/" + c.k;
    if (!report.verdict) return name + ": " + report.failed_claim.value_or("failed");
    if (!report.quotient_in_class) return name + ": quotient not p.q.-Baer*";
    if (report.preserved_rows() != report.preservation.size()) return name + ": cover not preserved";
    summary << " " << name << " " << report.preserved_rows() << "/" << report.preservation.size();
  }
  return {};
}

// Cap high enough for R + K over M(2,Z(7)).
constexpr std::size_t kExtendedCap = 20'000;

struct UnitalCase {
  std::string ring;
  std::string scalars;
};

std::vector<UnitalCase> unital_corpus() {
  std::vector<UnitalCase> out;
  for (const auto& d : generate_corpus("medium")) {
    const StarRing r = build_ring(d, options().limits);
    if (!r.unity()) continue;
    out.push_back({to_string(d), "Z(" + std::to_string(characteristic(r)) + ")"});
  }
  return out;
}

std::string unital_collapse(std::ostringstream& summary) {
  const auto opts = options(kExtendedCap);
  std::size_t rings = 0;
  for (const auto& c : unital_corpus()) {
    const auto alg = natural(c.ring, c.scalars, opts);
    const QuotientRing q = build_quotient(alg, opts);
    // A unity forces L(R) = 0.
    if (!embedding_injectivity(alg, q).injective) return c.ring + ": L(R) is nonzero";
    if (q.ring.order() != alg.ring().order()) return c.ring + ": quotient order " + std::to_string(q.ring.order());
    std::vector<bool> hit(q.ring.order(), false);
    for (Index a = 0; a < alg.ring().order(); ++a) {
      const Index e = embed(alg, q, a);
      if (hit[e]) return c.ring + ": embed not injective";
      hit[e] = true;
    }
    const auto collapse = check_unital_collapse(alg, q);
    if (!collapse.verdict) return c.ring + ": " + collapse.detail;
    ++rings;
  }
  summary << " " << rings << " unital rings";
  return {};
}

std::string negative_controls(std::ostringstream& summary) {
  const StarRing r = ring("sub(Z(9);3)");
  if (is_proper_involution(r).verdict) return "proper";
  if (is_semi_proper(r).verdict) return "semi-proper";
  const auto w = is_weakly_rickart_star(r);
  if (w.verdict) return "weakly Rickart*";
  if (w.witness.empty() || r.literal(w.witness.front()) != ElementLiteral::integer(3)) return "witness is not 3";
  const auto alg = natural("sub(Z(9);3)", "Z(9)");
  const QuotientRing q = build_quotient(alg);
  if (q.kernel.order() != 9) return "|N| = " + std::to_string(q.kernel.order());
  if (q.ring.order() != 3) return "quotient order " + std::to_string(q.ring.order());
  if (embedding_injectivity(alg, q).injective) return "embed injective";
  summary << " |N|=9 |Q|=3 witness 3";
  return {};
}

std::string implications(std::ostringstream& summary) {
  const auto corpus = generate_corpus("medium");
  const auto reports = implication_suite(corpus, options());
  for (const auto& r : reports) {
    if (!r.verdict) return r.ring + ": " + r.property + " " + r.detail;
  }
  summary << " " << reports.size() << " checks over " << corpus.size() << " rings";
  return {};
}

std::string oracle_equivalences(std::ostringstream& summary) {
  std::size_t star_checks = 0, mirror_checks = 0, formula_checks = 0;
  for (const auto& d : generate_corpus("medium")) {
    const StarRing r = build_ring(d, options().limits);
    const ProjectionAnalysis pa(r, options().jobs);
    const bool proper = is_proper_involution(r, options()).verdict;
    for (Index x = 0; x < r.order(); ++x) {
      if (proper && pa.find_rp(x).found()) {
        if (pa.rp_via_star(x) != pa.rp(x)) return to_string(d) + ": rp_via_star differs at " + r.format(x);
        ++star_checks;
      }
      if (pa.find_lp(x).found()) {
        if (!pa.find_rp(r.star(x)).found() || pa.lp(x) != r.star(pa.rp(r.star(x)))) {
          return to_string(d) + ": lp mirror fails at " + r.format(x);
        }
        ++mirror_checks;
      }
    }
  }
  auto cases = unital_corpus();
  cases.insert(cases.end(), {{"Z(6)", "Z(6)"}, {"M(2,Z(3))", "Z(6)"}, {"sub(Z(9);3)", "Z(9)"}, {"Z(4)", "Z(8)"}});
  const auto opts = options(kExtendedCap);
  for (const auto& c : cases) {
    const auto alg = natural(c.ring, c.scalars, opts);
    const QuotientRing q = build_quotient(alg, opts);
    const QuotientCalculus calc(alg, q, opts.jobs);
    for (Index coset = 0; coset < q.ring.order(); ++coset) {
      if (!calc.quotient_analysis().find_rp(coset).found()) continue;
      try {
        if (calc.rp_in_quotient(coset).route != FormulaRoute::BruteOnly) ++formula_checks;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::FormulaMismatch) return c.ring + "/" + c.scalars + ": " + e.what();
        // The formula does not apply to this coset.
      }
    }
  }
  if (star_checks == 0 || formula_checks == 0) return "nothing checked";
  summary << " rp_via_star " << star_checks << ", lp mirror " << mirror_checks << ", quotient formulas "
          << formula_checks;
  return {};
}

std::string cli_output(std::vector<std::string> args) {
  args.insert(args.begin(), "starlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

std::string determinism(std::ostringstream& summary) {
  const std::vector<std::vector<std::string>> commands{
      {"describe", "M(2,Z(5))"},
      {"check", "M(2,Z(3))", "pq-baer-star"},
      {"check", "Z(12)", "rickart-star"},
      {"projections", "prod(Z(2),M(2,Z(2)))"},
      {"unitify", "M(2,Z(3))", "--K", "Z(6)", "--verify", "rickart"},
      {"unitify", "Z(6)", "--K", "Z(6)", "--verify", "pqbaer"},
      {"verify", "--corpus", "small"},
      {"scan-cor", "--row", "1:2-12", "--row", "2:2-5"},
  };
  for (const auto& cmd : commands) {
    auto one = cmd, eight = cmd;
    one.insert(one.begin(), {"--format", "json", "--jobs", "1"});
    eight.insert(eight.begin(), {"--format", "json", "--jobs", "8"});
    const auto a = cli_output(one);
    if (a.empty()) return cmd.front() + ": no output";
    if (a != cli_output(eight)) return cmd.front() + " " + cmd[1] + ": outputs differ";
  }
  summary << " " << commands.size() << " commands";
  return {};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria{
      {"1 arithmetic vs brute-force Baer* for M(n,Z(m))", scan_cor},
      {"2 RP not a central cover in M(2,Z(3))", example_witness},
      {"3 Rickart side without domain or torsion-free scalars", rickart_beyond},
      {"4 p.q.-Baer side", pq_baer_side},
      {"5 unital collapse over the medium corpus", unital_collapse},
      {"6 negative controls on sub(Z(9);3)", negative_controls},
      {"7 implication suite over the medium corpus", implications},
      {"8 oracle equivalences", oracle_equivalences},
      {"9 determinism across thread counts", determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    std::ostringstream summary;
    std::string reason;
    const auto start = std::chrono::steady_clock::now();
    try {
      reason = run(summary);
    } catch (const std::exception& e) {
      reason = std::string("error: ") + e.what();
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (reason.empty()) {
      std::cout << "PASS " << name << ":" << summary.str() << " (" << ms << " ms)\n";
    } else {
      std::cout << "FAIL " << name << ": " << reason << " (" << ms << " ms)\n";
      ++failures;
    }
    std::cout.flush();
  }
  return failures;
}
