#ifndef STREAMKIT_SCAN_HPP
#define STREAMKIT_SCAN_HPP

#include <cstdint>
#include <vector>

namespace sk {
namespace scan {

// out[0] = in[0], out[n] = out[n-1] + in[n]. The accumulation runs on a
// local variable rather than reading the output back.
std::vector<std::int64_t> prefix_sum(const std::vector<std::int64_t>& in);

// Observable accesses to the count array, for checking that consecutive
// equal bins hit the accumulator instead of the memory.
struct HistogramStats {
  std::uint64_t hist_reads = 0;
  std::uint64_t hist_writes = 0;
};

// Counts bin occurrences. Keeps the running count of the previous bin in a
// register (old/accu pair) and only touches the count array when the bin
// changes, plus one final flush.
std::vector<std::int64_t> histogram(const std::vector<int>& in, std::size_t num_bins,
                                    HistogramStats* stats = nullptr);

// Map-reduce form: the input splits into num_pe contiguous chunks whose
// histograms are computed independently (possibly on separate threads) and
// then summed bin-wise.
std::vector<std::int64_t> histogram_mapreduce(const std::vector<int>& in,
                                              std::size_t num_bins, std::size_t num_pe);

}  // namespace scan
}  // namespace sk

#endif
