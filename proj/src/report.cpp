#include "starlab/report.hpp"

#include "starlab/star_ring.hpp"

namespace starlab {

void PropertyReport::set_witness(const StarRing& r, std::vector<Index> elements) {
  witness_literals.clear();
  for (auto e : elements) witness_literals.push_back(r.literal(e));
  witness = std::move(elements);
}

nlohmann::json to_json(const PropertyReport& report, bool include_timing) {
  nlohmann::json j;
  j["ring"] = report.ring;
  j["property"] = report.property;
  j["verdict"] = report.verdict;
  if (!report.witness_literals.empty()) {
    auto w = nlohmann::json::array();
    for (const auto& lit : report.witness_literals) w.push_back(to_json(lit));
    j["witness"] = w;
  }
  if (!report.detail.empty()) j["detail"] = report.detail;
  if (include_timing) j["micros"] = report.elapsed.count();
  return j;
}

std::string to_text(const PropertyReport& report) {
  std::string s = report.property + " [" + report.ring + "]: " + (report.verdict ? "true" : "false");
  if (!report.witness_literals.empty()) {
    s += "  witness:";
    for (const auto& lit : report.witness_literals) s += " " + to_string(lit);
  }
  if (!report.detail.empty()) s += "  (" + report.detail + ")";
  return s;
}

}  // namespace starlab
