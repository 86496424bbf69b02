#include "starlab/golden.hpp"

#include <fstream>
#include <sstream>

#include "starlab/classifiers.hpp"
#include "starlab/dsl.hpp"
#include "starlab/error.hpp"
#include "starlab/projections.hpp"
#include "starlab/ring_builder.hpp"
#include "starlab/scalar_algebra.hpp"
#include "starlab/unitification.hpp"

namespace starlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

nlohmann::json literals(const StarRing& r, const std::vector<Index>& xs) {
  auto out = nlohmann::json::array();
  for (Index x : xs) out.push_back(to_json(r.literal(x)));
  return out;
}

ScalarAlgebra natural_algebra(const StarRing& r, const std::string& k_expr, const ScanOptions& opts) {
  StarRing k = build_ring(parse_ring_expr(k_expr), opts.limits);
  return build_scalar_algebra(r, k, NaturalAction{}, opts);
}

nlohmann::json bound_table(const ScalarAlgebra& alg, const ScaledBoundTable& table) {
  if (!table.holds()) {
    return {{"fails",
             {to_json(alg.scalars().literal(table.failure->first)), to_json(alg.ring().literal(table.failure->second))}}};
  }
  auto rows = nlohmann::json::array();
  for (const auto& b : table.bounds) {
    rows.push_back({to_json(alg.scalars().literal(b.lambda)), to_json(alg.ring().literal(b.bound))});
  }
  return rows;
}

}  // namespace

nlohmann::json evaluate_query(const RingDescriptor& ring, const std::string& query, const ScanOptions& opts) {
  const StarRing r = build_ring(ring, opts.limits);
  const auto colon = query.find(':');
  const std::string head = query.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : query.substr(colon + 1);

  if (head == "order") return r.order();
  if (head == "characteristic") return characteristic(r);
  if (head == "unity") return r.unity() ? to_json(r.literal(*r.unity())) : nlohmann::json(nullptr);
  if (head == "projections" || head == "central-projections") {
    std::vector<Index> xs;
    const ProjectionPoset poset(r, opts.jobs);
    for (const auto& p : poset.items()) {
      if (head == "projections" || p.central) xs.push_back(p.element);
    }
    return literals(r, xs);
  }
  if (head == "property" || head == "witness") {
    Classifier c(r, opts);
    const auto report = c.run(arg);
    if (head == "property") return report.verdict;
    auto w = nlohmann::json::array();
    for (const auto& lit : report.witness_literals) w.push_back(to_json(lit));
    return w;
  }
  if (head == "rp" || head == "lp" || head == "cover") {
    ProjectionAnalysis a(r, opts.jobs);
    const Index x = r.index_of(parse_element_literal(arg));
    const Index e = head == "rp" ? a.rp(x) : head == "lp" ? a.lp(x) : a.central_cover(x);
    return to_json(r.literal(e));
  }
  if (head == "condition3" || head == "condition-beta") {
    const auto alg = natural_algebra(r, arg, opts);
    ProjectionAnalysis a(r, opts.jobs);
    return bound_table(alg, head == "condition3" ? condition3_witnesses(alg, a) : condition_beta_witnesses(alg, a));
  }
  if (head == "kernel-order" || head == "quotient-order" || head == "injective") {
    const auto alg = natural_algebra(r, arg, opts);
    const auto q = build_quotient(alg, opts);
    if (head == "kernel-order") return q.kernel.order();
    if (head == "quotient-order") return q.ring.order();
    return embedding_injectivity(alg, q).injective;
  }
  if (head == "eigen") {
    const auto parts = split(arg, ':');
    if (parts.size() != 4) throw Error(ErrorCode::InvalidDescriptor, "eigen query needs K:A:LAMBDA:CENTRAL");
    const auto alg = natural_algebra(r, parts[0], opts);
    ProjectionAnalysis a(r, opts.jobs);
    const Index x = r.index_of(parse_element_literal(parts[1]));
    const Index lambda = alg.scalars().index_of(parse_element_literal(parts[2]));
    return to_json(r.literal(largest_eigen_projection(alg, a, x, lambda, parts[3] == "1")));
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown golden query '" + query + "'");
}

GoldenStore GoldenStore::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidDescriptor, "cannot read golden store " + path);
  const auto j = nlohmann::json::parse(in);
  GoldenStore store;
  for (const auto& e : j.at("entries")) {
    store.entries_.push_back({e.at("hash").get<std::string>(), e.at("ring").get<std::string>(),
                              e.at("query").get<std::string>(), e.at("value"), e.at("provenance").get<std::string>()});
  }
  return store;
}

nlohmann::json GoldenStore::to_json() const {
  auto entries = nlohmann::json::array();
  for (const auto& e : entries_) {
    entries.push_back(
        {{"hash", e.hash}, {"ring", e.ring}, {"query", e.query}, {"value", e.value}, {"provenance", e.provenance}});
  }
  return {{"entries", entries}};
}

void GoldenStore::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidDescriptor, "cannot write golden store " + path);
  out << to_json().dump(2) << "\n";
}

void GoldenStore::record(const RingDescriptor& ring, const std::string& query, nlohmann::json value,
                         std::string provenance) {
  GoldenEntry entry{descriptor_hash(ring), to_string(ring), query, std::move(value), std::move(provenance)};
  for (auto& e : entries_) {
    if (e.hash == entry.hash && e.query == entry.query) {
      e = std::move(entry);
      return;
    }
  }
  entries_.push_back(std::move(entry));
}

std::vector<GoldenMismatch> GoldenStore::replay(const ScanOptions& opts) const {
  std::vector<GoldenMismatch> out;
  for (const auto& e : entries_) {
    const auto d = parse_ring_expr(e.ring);
    if (descriptor_hash(d) != e.hash) {
      out.push_back({e, "hash mismatch: " + descriptor_hash(d)});
      continue;
    }
    nlohmann::json actual;
    try {
      actual = evaluate_query(d, e.query, opts);
    } catch (const Error& err) {
      actual = {{"error", std::string(to_string(err.code()))}};
    }
    if (actual != e.value) out.push_back({e, actual});
  }
  return out;
}

}  // namespace starlab
