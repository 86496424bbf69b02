#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"

#include "starlab/descriptor.hpp"
#include "starlab/types.hpp"

namespace starlab {

class StarRing;

/// Outcome of a classifier or embedding check. A false verdict always carries a
/// counterexample in `witness` (indices) and `witness_literals` (names).
struct PropertyReport {
  std::string ring;
  std::string property;
  bool verdict = false;
  std::vector<Index> witness;
  std::vector<ElementLiteral> witness_literals;
  std::string detail;
  std::chrono::microseconds elapsed{0};

  void set_witness(const StarRing& r, std::vector<Index> elements);
};

/// {ring, property, verdict, witness?, detail?, micros?}. Timing is opt-in so
/// that reruns produce byte-identical output.
nlohmann::json to_json(const PropertyReport& report, bool include_timing = false);

/// One-line human readable form.
std::string to_text(const PropertyReport& report);

/// Stopwatch writing into a report's `elapsed` on destruction.
class ReportTimer {
 public:
  explicit ReportTimer(PropertyReport& report)
      : report_(report), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    report_.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start_);
  }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

 private:
  PropertyReport& report_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace starlab
