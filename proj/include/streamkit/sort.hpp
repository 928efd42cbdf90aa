#ifndef STREAMKIT_SORT_HPP
#define STREAMKIT_SORT_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "streamkit/flow.hpp"

namespace sk {
namespace sort {

// In-place insertion sort: the inner loop walks the sorted prefix and shifts
// larger elements right to make room. Stable; N-1 comparisons when the input
// is already sorted.
template <typename T, typename Less = std::less<T>>
void insertion_sort(std::vector<T>& a, Less less = Less()) {
  for (std::size_t i = 1; i < a.size(); ++i) {
    T item = a[i];
    std::size_t j = i;
    while (j > 0 && less(item, a[j - 1])) {
      a[j] = a[j - 1];
      --j;
    }
    a[j] = item;
  }
}

// One cell of the sorting chain. Holds one element, initialized to the
// type's minimum so any real input displaces it.
template <typename T>
struct SortCell {
  T local = std::numeric_limits<T>::lowest();
};

// Compare-swap beat: the smaller of input and register goes out, the larger
// stays.
template <typename T>
T cell_step(SortCell<T>& c, const T& in) {
  if (c.local < in) {
    T out = c.local;
    c.local = in;
    return out;
  }
  return in;
}

// A linear array of N sorting cells, cell 0 nearest the input. After k
// insertions the registers hold the k largest-first values padded by
// sentinels. Draining shifts registers toward the output, smallest first,
// and stores the (ignored) drain input, so feeding the sentinel during the
// drain resets the chain for the next array.
template <typename T>
class CellChain {
 public:
  explicit CellChain(std::size_t n) : cells_(n) {
    if (n == 0) throw std::invalid_argument("cell chain: need at least one cell");
  }

  std::size_t size() const { return cells_.size(); }
  std::size_t inserted() const { return inserted_; }
  static T sentinel() { return std::numeric_limits<T>::lowest(); }

  T insert(const T& v) {
    if (inserted_ >= cells_.size()) {
      throw std::length_error("cell chain: more data items than cells");
    }
    ++inserted_;
    T x = v;
    for (auto& c : cells_) x = cell_step(c, x);
    return x;
  }

  T drain(const T& v) {
    T x = v;
    for (auto& c : cells_) {
      T out = c.local;
      c.local = x;
      x = out;
    }
    if (inserted_ > 0) --inserted_;
    return x;
  }

  // 2N stream beats: N inserts then N drains, mirroring a testbench that
  // calls the chain twice per element. Every beat consumes one input and
  // produces one output; only the drain-phase outputs carry sorted data.
  void call(flow::Stream<T>& in, flow::Stream<T>& out) {
    auto v = in.pop();
    if (!v) throw flow::PipelineError("cell chain: input underflow");
    out.push(calls_ < cells_.size() ? insert(*v) : drain(*v));
    calls_ = (calls_ + 1) % (2 * cells_.size());
  }

 private:
  std::vector<SortCell<T>> cells_;
  std::size_t inserted_ = 0;
  std::size_t calls_ = 0;
};

// Streams `n` data items plus `n` drain beats through a fresh chain; the
// last n outputs are the inputs in ascending order.
template <typename T>
void insertion_cell_sort(flow::Stream<T>& in, flow::Stream<T>& out, std::size_t n) {
  CellChain<T> chain(n);
  for (std::size_t i = 0; i < 2 * n; ++i) chain.call(in, out);
}

// Two-finger merge of in[i1..i2) and in[i2..i3) into out[i1..i3), reading
// each head element once per iteration. Ties take the left run, which keeps
// the merge stable.
template <typename T, typename Less = std::less<T>>
void merge(const std::vector<T>& in, std::size_t i1, std::size_t i2, std::size_t i3,
           std::vector<T>& out, Less less = Less()) {
  if (i1 > i2 || i2 > i3 || i3 > in.size() || out.size() < in.size()) {
    throw std::invalid_argument("merge: bad run indices");
  }
  std::size_t f1 = i1, f2 = i2;
  for (std::size_t idx = i1; idx < i3; ++idx) {
    if (f1 < i2 && (f2 == i3 || !less(in[f2], in[f1]))) {
      out[idx] = in[f1++];
    } else {
      out[idx] = in[f2++];
    }
  }
}

// Iterative merge sort: widths 1, 2, 4, ... with one temp buffer copied back
// each pass. Runs at the tail shorter than the width are clamped, so any
// length works.
template <typename T, typename Less = std::less<T>>
void merge_sort(std::vector<T>& a, Less less = Less()) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  std::vector<T> temp(a);
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t i1 = 0; i1 < n; i1 += 2 * width) {
      std::size_t i2 = std::min(i1 + width, n);
      std::size_t i3 = std::min(i1 + 2 * width, n);
      merge(a, i1, i2, i3, temp, less);
    }
    a = temp;
  }
}

// The stage loop unrolled into a dataflow pipeline: log2(size) merge
// processes pass whole arrays across bounded channels, so several arrays can
// be in flight at once. Size must be a power of two, at least 4.
template <typename T, typename Less = std::less<T>>
std::vector<std::vector<T>> merge_sort_parallel_batch(
    const std::vector<std::vector<T>>& inputs, bool threaded = false,
    flow::RunStats* stats = nullptr, Less less = Less()) {
  if (inputs.empty()) return {};
  const std::size_t n = inputs.front().size();
  if (n < 4 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("merge_sort_parallel: length must be a power of two >= 4");
  }
  for (const auto& v : inputs) {
    if (v.size() != n) throw std::invalid_argument("merge_sort_parallel: ragged batch");
  }
  std::size_t stages = 0;
  while ((std::size_t(1) << stages) < n) ++stages;

  std::vector<std::unique_ptr<flow::Stream<std::vector<T>>>> chans;
  for (std::size_t i = 0; i <= stages; ++i) {
    chans.push_back(std::make_unique<flow::Stream<std::vector<T>>>(
        "msort.chan" + std::to_string(i), inputs.size() + 1));
  }

  flow::Pipeline pipe;
  for (std::size_t s = 1; s <= stages; ++s) {
    const std::size_t width = std::size_t(1) << (s - 1);
    pipe.add_stage({"merge_arrays" + std::to_string(s),
                    [&chans, s, width, n, less]() {
                      std::vector<T> cur = chans[s - 1]->pop().value();
                      std::vector<T> next(cur);
                      for (std::size_t i1 = 0; i1 < n; i1 += 2 * width) {
                        merge(cur, i1, i1 + width, i1 + 2 * width, next, less);
                      }
                      chans[s]->push(std::move(next));
                    },
                    {chans[s - 1].get()},
                    {chans[s].get()}});
  }

  for (const auto& v : inputs) chans[0]->push(v);
  flow::RunStats rs = pipe.run(static_cast<int>(inputs.size()), threaded);
  if (stats) *stats = rs;

  std::vector<std::vector<T>> out;
  out.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) out.push_back(chans[stages]->pop().value());
  return out;
}

template <typename T, typename Less = std::less<T>>
void merge_sort_parallel(const std::vector<T>& a, std::vector<T>& b, bool threaded = false,
                         Less less = Less()) {
  b = merge_sort_parallel_batch<T, Less>({a}, threaded, nullptr, less).front();
}

}  // namespace sort
}  // namespace sk

#endif
