#include "starlab/cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "starlab/classifiers.hpp"
#include "starlab/corpus.hpp"
#include "starlab/dsl.hpp"
#include "starlab/error.hpp"
#include "starlab/golden.hpp"
#include "starlab/projections.hpp"
#include "starlab/ring_builder.hpp"
#include "starlab/scalar_algebra.hpp"
#include "starlab/unitification.hpp"

namespace starlab {

namespace {

struct Globals {
  std::string format = "text";
  unsigned jobs = 1;
  std::size_t max_order = Limits{}.max_order;
  bool timing = false;

  bool json() const { return format == "json"; }
  ScanOptions scan() const {
    ScanOptions o;
    o.jobs = jobs == 0 ? 1 : jobs;
    o.limits.max_order = max_order;
    return o;
  }
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidDescriptor:
    case ErrorCode::InvalidElement:
      return kExitUsage;
    case ErrorCode::VerificationFailed:
    case ErrorCode::FormulaMismatch:
      return kExitVerification;
    default:
      return kExitHypothesis;
  }
}

void emit(std::ostream& out, const Globals& g, const nlohmann::json& j, const std::string& text) {
  if (g.json()) {
    out << j.dump() << "\n";
  } else {
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
  }
}

StarRing ring_from(const std::string& expr, const Globals& g) {
  return build_ring(parse_ring_expr(expr), g.scan().limits);
}

int cmd_describe(const std::string& expr, const Globals& g, std::ostream& out) {
  const auto d = parse_ring_expr(expr);
  const StarRing r = build_ring(d, g.scan().limits);
  const ProjectionPoset poset(r, g.scan().jobs);
  std::size_t central = 0;
  for (const auto& p : poset.items()) central += p.central ? 1 : 0;
  nlohmann::json j{{"ring", to_string(d)},
                   {"hash", descriptor_hash(d)},
                   {"descriptor", to_json(d)},
                   {"order", r.order()},
                   {"characteristic", characteristic(r)},
                   {"unity", r.unity() ? to_json(r.literal(*r.unity())) : nlohmann::json(nullptr)},
                   {"tabulated", r.tabulated()},
                   {"projections", poset.size()},
                   {"central_projections", central}};
  std::ostringstream text;
  text << to_string(d) << "  (hash " << descriptor_hash(d) << ")\n"
       << "  order " << r.order() << ", characteristic " << characteristic(r) << "\n"
       << "  unity " << (r.unity() ? r.format(*r.unity()) : std::string("none")) << "\n"
       << "  projections " << poset.size() << " (" << central << " central)\n"
       << "  tables " << (r.tabulated() ? "materialized" : "computed on demand") << "\n";
  emit(out, g, j, text.str());
  return kExitPass;
}

int cmd_check(const std::string& expr, const std::string& property, const Globals& g, std::ostream& out,
              std::ostream& err) {
  Classifier c(ring_from(expr, g), g.scan());
  const auto report = c.run(property);
  for (const auto& w : c.warnings()) err << "warning: " << w << "\n";
  emit(out, g, to_json(report, g.timing), to_text(report));
  return report.verdict ? kExitPass : kExitFalse;
}

int cmd_projection(const std::string& op, const std::string& expr, const std::string& lit, const Globals& g,
                   std::ostream& out) {
  const StarRing r = ring_from(expr, g);
  const Index x = r.index_of(parse_element_literal(lit));
  ProjectionAnalysis a(r, g.scan().jobs);
  const Index e = op == "rp" ? a.rp(x) : op == "lp" ? a.lp(x) : a.central_cover(x);
  nlohmann::json j{{"ring", r.label()}, {"op", op}, {"x", to_json(r.literal(x))}, {"value", to_json(r.literal(e))}};
  emit(out, g, j, op + "(" + r.format(x) + ") = " + r.format(e));
  return kExitPass;
}

int cmd_projections(const std::string& expr, const Globals& g, std::ostream& out) {
  const StarRing r = ring_from(expr, g);
  const ProjectionPoset poset(r, g.scan().jobs);
  auto items = nlohmann::json::array();
  std::ostringstream text;
  text << poset.size() << " projections in " << r.label() << "\n";
  for (const auto& p : poset.items()) {
    items.push_back({{"element", to_json(r.literal(p.element))}, {"central", p.central}});
    text << "  " << r.format(p.element) << (p.central ? "  central" : "") << "\n";
  }
  emit(out, g, {{"ring", r.label()}, {"projections", items}}, text.str());
  return kExitPass;
}

int cmd_unitify(const std::string& expr, const std::string& k_expr, const std::string& action,
                const std::string& verify, const Globals& g, std::ostream& out) {
  if (action != "natural") throw Error(ErrorCode::InvalidDescriptor, "only the natural action is available here");
  const auto opts = g.scan();
  const StarRing r = ring_from(expr, g);
  const StarRing k = ring_from(k_expr, g);
  const ScalarAlgebra alg = build_scalar_algebra(r, k, NaturalAction{}, opts);

  std::vector<std::string> banner;
  if (!alg.scalars_domain()) banner.push_back("K is not an integral domain");
  if (!alg.torsion_free()) banner.push_back("torsion present");

  const QuotientRing q = build_quotient(alg, opts);
  const auto inj = embedding_injectivity(alg, q);
  nlohmann::json j{{"ring", r.label()},
                   {"scalars", k.label()},
                   {"flags", banner},
                   {"kernel_order", q.kernel.order()},
                   {"quotient_order", q.ring.order()},
                   {"injective", inj.injective},
                   {"involution", std::string(to_string(q.involution_source))}};
  if (inj.witness) j["injectivity_witness"] = to_json(r.literal(*inj.witness));
  std::ostringstream text;
  for (const auto& b : banner) text << "! " << b << "\n";
  text << r.label() << " over " << k.label() << ": kernel order " << q.kernel.order() << ", quotient order "
       << q.ring.order() << ", embedding " << (inj.injective ? "injective" : "not injective");
  if (inj.witness) text << " (" << r.format(*inj.witness) << " maps to [0,0])";
  text << "\n  involution installed via " << to_string(q.involution_source) << "\n";

  int code = kExitPass;
  if (verify != "none") {
    if (verify != "rickart" && verify != "pqbaer") {
      throw Error(ErrorCode::InvalidDescriptor, "--verify takes rickart, pqbaer or none");
    }
    const auto report =
        verify_unitification(alg, verify == "rickart" ? UnitificationMode::Rickart : UnitificationMode::PqBaer, opts);
    j["verification"] = to_json(report);
    text << to_text(report);
    if (!report.verdict) code = kExitVerification;
  }
  emit(out, g, j, text.str());
  return code;
}

struct CorRow {
  std::uint32_t n;
  std::uint64_t m;
};

int cmd_scan_cor(const std::vector<CorRow>& rows, const Globals& g, std::ostream& out) {
  auto table = nlohmann::json::array();
  std::ostringstream text;
  text << "  n   m  arithmetic  brute  agree\n";
  bool all_agree = true;
  for (const auto& row : rows) {
    const auto d = RingDescriptor::matrix(row.n, RingDescriptor::cyclic(row.m));
    const bool arithmetic = classify_matrix_ring(row.n, row.m);
    if (d.order_bound() > g.max_order) {
      table.push_back({{"n", row.n}, {"m", row.m}, {"arithmetic", arithmetic}, {"skipped", "above the order cap"}});
      text << "  " << row.n << "  " << (row.m < 10 ? " " : "") << row.m << "  " << (arithmetic ? "true " : "false")
           << "       skipped (order " << d.order_bound() << ")\n";
      continue;
    }
    const bool brute = is_baer_star(build_ring(d, g.scan().limits), g.scan()).verdict;
    const bool agree = brute == arithmetic;
    all_agree = all_agree && agree;
    table.push_back({{"n", row.n}, {"m", row.m}, {"arithmetic", arithmetic}, {"brute", brute}, {"agree", agree}});
    text << "  " << row.n << "  " << (row.m < 10 ? " " : "") << row.m << "  " << (arithmetic ? "true " : "false")
         << "       " << (brute ? "true " : "false") << "  " << (agree ? "yes" : "NO") << "\n";
  }
  text << (all_agree ? "all rows agree" : "DISAGREEMENT") << "\n";
  emit(out, g, {{"rows", table}, {"agree", all_agree}}, text.str());
  return all_agree ? kExitPass : kExitVerification;
}

int cmd_corpus(const std::string& profile, const Globals& g, std::ostream& out) {
  const auto rings = generate_corpus(profile);
  auto list = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& d : rings) {
    list.push_back({{"ring", to_string(d)}, {"hash", descriptor_hash(d)}});
    text << to_string(d) << "\n";
  }
  emit(out, g, {{"profile", profile}, {"rings", list}}, text.str());
  return kExitPass;
}

int cmd_verify(const std::string& profile, const std::vector<std::string>& exprs, const Globals& g,
               std::ostream& out) {
  std::vector<RingDescriptor> corpus;
  for (const auto& e : exprs) corpus.push_back(parse_ring_expr(e));
  if (corpus.empty()) corpus = generate_corpus(profile);
  const auto reports = implication_suite(corpus, g.scan());
  auto list = nlohmann::json::array();
  std::ostringstream text;
  std::size_t violations = 0;
  for (const auto& r : reports) {
    if (!r.verdict) {
      ++violations;
      text << "VIOLATION " << to_text(r) << "\n";
    }
    list.push_back(to_json(r, g.timing));
  }
  text << reports.size() << " checks over " << corpus.size() << " rings, " << violations << " violations\n";
  emit(out, g, {{"reports", list}, {"rings", corpus.size()}, {"violations", violations}}, text.str());
  return violations == 0 ? kExitPass : kExitVerification;
}

int cmd_golden(const std::string& action, const std::string& store_path, const std::string& ring,
               const std::string& query, const std::string& provenance, const Globals& g, std::ostream& out) {
  if (action == "replay") {
    const auto store = GoldenStore::load(store_path);
    const auto mismatches = store.replay(g.scan());
    std::ostringstream text;
    auto list = nlohmann::json::array();
    for (const auto& m : mismatches) {
      text << "MISMATCH " << m.entry.ring << " " << m.entry.query << ": expected " << m.entry.value.dump()
           << ", got " << m.actual.dump() << "\n";
      list.push_back({{"ring", m.entry.ring}, {"query", m.entry.query}, {"expected", m.entry.value},
                      {"actual", m.actual}});
    }
    text << store.entries().size() << " entries, " << mismatches.size() << " mismatches\n";
    emit(out, g, {{"entries", store.entries().size()}, {"mismatches", list}}, text.str());
    return mismatches.empty() ? kExitPass : kExitVerification;
  }
  if (action == "eval" || action == "record") {
    const auto d = parse_ring_expr(ring);
    const auto value = evaluate_query(d, query, g.scan());
    if (action == "record") {
      GoldenStore store;
      try {
        store = GoldenStore::load(store_path);
      } catch (const Error&) {
      }
      store.record(d, query, value, provenance);
      store.save(store_path);
    }
    emit(out, g, {{"ring", to_string(d)}, {"query", query}, {"value", value}}, value.dump());
    return kExitPass;
  }
  throw Error(ErrorCode::InvalidDescriptor, "golden takes replay, eval or record");
}

// "1:2-12" -> n = 1, m in 2..12
std::vector<CorRow> parse_rows(const std::vector<std::string>& specs) {
  std::vector<CorRow> rows;
  for (const auto& s : specs) {
    const auto colon = s.find(':');
    const auto dash = s.find('-', colon);
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidDescriptor, "row spec must look like N:M or N:M1-M2");
    try {
      const auto n = static_cast<std::uint32_t>(std::stoul(s.substr(0, colon)));
      const auto lo = std::stoull(s.substr(colon + 1, dash == std::string::npos ? std::string::npos : dash - colon - 1));
      const auto hi = dash == std::string::npos ? lo : std::stoull(s.substr(dash + 1));
      for (auto m = lo; m <= hi; ++m) rows.push_back({n, m});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidDescriptor, "bad row spec '" + s + "'");
    }
  }
  return rows;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite rings with involution: construction, classification, unitification checks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", g.jobs, "Worker threads for element scans");
  app.add_option("--max-order", g.max_order, "Refuse rings with more elements than this");
  app.add_flag("--timing", g.timing, "Include elapsed microseconds in JSON reports");

  std::string ring, property, literal, k_expr, action = "natural", verify = "none", profile = "small";
  std::string golden_action, store = "tests/golden/golden.json", query, provenance = "derived";
  std::vector<std::string> rings, row_specs;
  std::uint32_t n_max = 0;
  std::uint64_t m_max = 0;

  auto* describe = app.add_subcommand("describe", "Order, unity, characteristic and projection count");
  describe->add_option("ring", ring)->required();
  auto* check = app.add_subcommand("check", "Decide one property; exit 3 with a witness when false");
  check->add_option("ring", ring)->required();
  check->add_option("property", property)->required();
  std::vector<CLI::App*> projection_cmds;
  for (const char* name : {"rp", "lp", "cover"}) {
    auto* cmd = app.add_subcommand(name, std::string(name) + " of an element");
    cmd->add_option("ring", ring)->required();
    cmd->add_option("element", literal)->required();
    projection_cmds.push_back(cmd);
  }
  auto* projections_cmd = app.add_subcommand("projections", "List projections");
  projections_cmd->add_option("ring", ring)->required();
  auto* unitify = app.add_subcommand("unitify", "Build R + K, the kernel N and the quotient");
  unitify->add_option("ring", ring)->required();
  unitify->add_option("--K", k_expr, "Scalar ring")->required();
  unitify->add_option("--action", action, "Scalar action");
  unitify->add_option("--verify", verify, "rickart, pqbaer or none");
  auto* verify_cmd = app.add_subcommand("verify", "Implication suite over a corpus or listed rings");
  verify_cmd->add_option("--corpus", profile, "Corpus profile");
  verify_cmd->add_option("rings", rings, "Ring expressions (override --corpus)");
  auto* scan = app.add_subcommand("scan-cor", "Arithmetic versus brute-force Baer* verdicts for M(n,Z(m))");
  scan->add_option("--n-max", n_max, "Rectangle 1..n-max");
  scan->add_option("--m-max", m_max, "Rectangle 2..m-max");
  scan->add_option("--row", row_specs, "N:M1-M2, repeatable");
  auto* corpus = app.add_subcommand("corpus", "List a corpus profile");
  corpus->add_option("profile", profile)->required();
  auto* golden = app.add_subcommand("golden", "Replay, evaluate or record golden values");
  golden->add_option("action", golden_action)->required();
  golden->add_option("ring", ring);
  golden->add_option("query", query);
  golden->add_option("--store", store, "Golden store path");
  golden->add_option("--provenance", provenance, "Provenance tag for record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (describe->parsed()) return cmd_describe(ring, g, out);
    if (check->parsed()) return cmd_check(ring, property, g, out, err);
    for (auto* cmd : projection_cmds) {
      if (cmd->parsed()) return cmd_projection(cmd->get_name(), ring, literal, g, out);
    }
    if (projections_cmd->parsed()) return cmd_projections(ring, g, out);
    if (unitify->parsed()) return cmd_unitify(ring, k_expr, action, verify, g, out);
    if (verify_cmd->parsed()) return cmd_verify(profile, rings, g, out);
    if (scan->parsed()) {
      std::vector<CorRow> rows;
      if (!row_specs.empty()) {
        rows = parse_rows(row_specs);
      } else if (n_max > 0 || m_max > 0) {
        for (std::uint32_t n = 1; n <= std::max<std::uint32_t>(n_max, 1); ++n) {
          for (std::uint64_t m = 2; m <= std::max<std::uint64_t>(m_max, 2); ++m) rows.push_back({n, m});
        }
      } else {
        rows = parse_rows({"1:2-12", "2:2-7", "3:2"});
      }
      return cmd_scan_cor(rows, g, out);
    }
    if (corpus->parsed()) return cmd_corpus(profile, g, out);
    if (golden->parsed()) return cmd_golden(golden_action, store, ring, query, provenance, g, out);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.detail() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitHypothesis;
  }
  return kExitUsage;
}

}  // namespace starlab
