#ifndef STREAMKIT_PERF_HPP
#define STREAMKIT_PERF_HPP

#include <cstdint>
#include <vector>

namespace sk {
namespace perf {

// Cycle model of one loop: trip count, per-iteration latency, and the
// initiation interval between iteration starts when pipelined.
struct LoopSpec {
  std::uint64_t trip_count = 0;      // N
  std::uint64_t iteration_latency = 1;  // IL, cycles
  std::uint64_t initiation_interval = 1;  // II, cycles
  bool pipelined = false;
};

// Sequential: N * IL. Pipelined: (N-1) * II + IL. Zero trips take no cycles.
std::uint64_t loop_latency(const LoopSpec& s);

// 1 / (period_seconds * cycles), period given in nanoseconds.
double throughput_hz(double clock_period_ns, std::uint64_t cycles);

// A dataflow region can start tasks no faster than its slowest process.
std::uint64_t dataflow_interval(const std::vector<std::uint64_t>& stage_intervals);

}  // namespace perf
}  // namespace sk

#endif
