#include "streamkit/perf.hpp"

#include <algorithm>
#include <stdexcept>

namespace sk {
namespace perf {

std::uint64_t loop_latency(const LoopSpec& s) {
  if (s.iteration_latency < 1) throw std::invalid_argument("loop: iteration latency >= 1");
  if (s.initiation_interval < 1) throw std::invalid_argument("loop: initiation interval >= 1");
  if (s.pipelined && s.initiation_interval > s.iteration_latency) {
    throw std::invalid_argument("loop: II must not exceed iteration latency");
  }
  if (s.trip_count == 0) return 0;
  if (s.pipelined) {
    return (s.trip_count - 1) * s.initiation_interval + s.iteration_latency;
  }
  return s.trip_count * s.iteration_latency;
}

double throughput_hz(double clock_period_ns, std::uint64_t cycles) {
  if (clock_period_ns <= 0.0 || cycles == 0) {
    throw std::invalid_argument("throughput: period and cycle count must be positive");
  }
  return 1.0 / (clock_period_ns * 1e-9 * static_cast<double>(cycles));
}

std::uint64_t dataflow_interval(const std::vector<std::uint64_t>& stage_intervals) {
  if (stage_intervals.empty()) {
    throw std::invalid_argument("dataflow interval: no stages");
  }
  return *std::max_element(stage_intervals.begin(), stage_intervals.end());
}

}  // namespace perf
}  // namespace sk
