#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "starlab/descriptor.hpp"
#include "starlab/types.hpp"

namespace starlab {

/// Answers a golden query about one ring. Query forms (literals use the DSL):
///   order | characteristic | unity | projections | central-projections
///   property:NAME            verdict of a classifier
///   witness:NAME             witness literals of a classifier
///   rp:X | lp:X | cover:X    projection literal
///   condition3:K | condition-beta:K            [[λ, e_λ], ...] or {"fails": [λ, x]}
///   kernel-order:K | quotient-order:K | injective:K
///   eigen:K:A:LAMBDA:CENTRAL  largest eigen-projection, CENTRAL is 0 or 1
/// K is a ring expression taken with the natural action.
nlohmann::json evaluate_query(const RingDescriptor& ring, const std::string& query, const ScanOptions& opts = {});

struct GoldenEntry {
  std::string hash;
  std::string ring;  // canonical DSL text, kept for readability and replay
  std::string query;
  nlohmann::json value;
  std::string provenance;
};

struct GoldenMismatch {
  GoldenEntry entry;
  nlohmann::json actual;
};

/// Flat JSON file {entries: [{hash, ring, query, value, provenance}]}.
class GoldenStore {
 public:
  static GoldenStore load(const std::string& path);
  void save(const std::string& path) const;

  const std::vector<GoldenEntry>& entries() const noexcept { return entries_; }
  /// Replaces an entry with the same (hash, query).
  void record(const RingDescriptor& ring, const std::string& query, nlohmann::json value, std::string provenance);

  /// Re-evaluates every entry; an empty result means a bit-exact replay.
  std::vector<GoldenMismatch> replay(const ScanOptions& opts = {}) const;

  nlohmann::json to_json() const;

 private:
  std::vector<GoldenEntry> entries_;
};

}  // namespace starlab
