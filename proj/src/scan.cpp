#include "streamkit/scan.hpp"

#include <stdexcept>
#include <string>
#include <thread>

namespace sk {
namespace scan {

std::vector<std::int64_t> prefix_sum(const std::vector<std::int64_t>& in) {
  std::vector<std::int64_t> out(in.size());
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    acc += in[i];
    out[i] = acc;
  }
  return out;
}

std::vector<std::int64_t> histogram(const std::vector<int>& in, std::size_t num_bins,
                                    HistogramStats* stats) {
  if (num_bins == 0) throw std::invalid_argument("histogram: need at least one bin");
  for (int v : in) {
    if (v < 0 || std::size_t(v) >= num_bins) {
      throw std::out_of_range("histogram: bin " + std::to_string(v) + " out of range");
    }
  }
  std::vector<std::int64_t> hist(num_bins, 0);
  HistogramStats local;
  if (!in.empty()) {
    int old = in[0];
    std::int64_t accu = 0;
    for (std::size_t i = 0; i < in.size(); ++i) {
      int val = in[i];
      if (val == old) {
        accu = accu + 1;
      } else {
        hist[old] = accu;
        local.hist_writes++;
        accu = hist[val] + 1;
        local.hist_reads++;
      }
      old = val;
    }
    hist[old] = accu;
    local.hist_writes++;
  }
  if (stats) *stats = local;
  return hist;
}

std::vector<std::int64_t> histogram_mapreduce(const std::vector<int>& in,
                                              std::size_t num_bins, std::size_t num_pe) {
  if (num_pe == 0) throw std::invalid_argument("histogram: need at least one PE");
  if (in.size() % num_pe != 0) {
    throw std::invalid_argument("histogram: input length not divisible by PE count");
  }
  const std::size_t chunk = in.size() / num_pe;

  std::vector<std::vector<std::int64_t>> partial(num_pe);
  std::vector<std::exception_ptr> errors(num_pe);
  {
    std::vector<std::thread> threads;
    for (std::size_t p = 0; p < num_pe; ++p) {
      threads.emplace_back([&, p]() {
        try {
          std::vector<int> part(in.begin() + p * chunk, in.begin() + (p + 1) * chunk);
          partial[p] = histogram(part, num_bins);
        } catch (...) {
          errors[p] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<std::int64_t> hist(num_bins, 0);
  for (std::size_t p = 0; p < num_pe; ++p) {
    for (std::size_t b = 0; b < num_bins; ++b) hist[b] += partial[p][b];
  }
  return hist;
}

}  // namespace scan
}  // namespace sk
