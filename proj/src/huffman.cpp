#include "streamkit/huffman.hpp"

#include <memory>
#include <stdexcept>
#include <string>

#include "streamkit/fft.hpp"  // bit_reverse_index

namespace sk {
namespace huffman {

std::vector<Symbol> filter(const std::array<std::uint32_t, kInputSymbols>& freqs) {
  std::vector<Symbol> out;
  for (std::size_t v = 0; v < kInputSymbols; ++v) {
    if (freqs[v] != 0) {
      out.push_back(Symbol{static_cast<std::uint16_t>(v), freqs[v]});
    }
  }
  return out;
}

std::vector<Symbol> radix_sort(std::vector<Symbol> symbols) {
  constexpr int kBitsPerPass = 4;
  constexpr int kRadix = 1 << kBitsPerPass;
  std::vector<Symbol> prev(symbols.size());

  for (int shift = 0; shift < 32; shift += kBitsPerPass) {
    prev.swap(symbols);
    std::array<std::uint32_t, kRadix> digit_histogram{};
    for (const Symbol& s : prev) digit_histogram[(s.frequency >> shift) & (kRadix - 1)]++;
    // Prefix sum gives each digit's first slot in the reordered array.
    std::array<std::uint32_t, kRadix> digit_location{};
    std::uint32_t acc = 0;
    for (int d = 0; d < kRadix; ++d) {
      digit_location[d] = acc;
      acc += digit_histogram[d];
    }
    for (const Symbol& s : prev) {
      int d = (s.frequency >> shift) & (kRadix - 1);
      symbols[digit_location[d]++] = s;
    }
  }
  return symbols;
}

Tree create_tree(const std::vector<Symbol>& sorted, std::vector<std::uint64_t>* node_freqs) {
  const std::size_t n = sorted.size();
  if (n < 2) {
    throw std::invalid_argument("huffman: tree needs at least two symbols");
  }
  Tree tree;
  tree.left.resize(n - 1);
  tree.right.resize(n - 1);
  tree.parent.resize(n - 1);
  std::vector<std::uint64_t> frequency(n - 1, 0);

  std::size_t in_count = 0;    // next unconsumed symbol
  std::size_t tree_count = 0;  // next unconsumed intermediate node
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::uint64_t node_freq = 0;
    // Symbols win frequency ties against intermediate nodes.
    if (in_count < n && (tree_count == i || sorted[in_count].frequency <= frequency[tree_count])) {
      tree.left[i] = sorted[in_count].value;
      node_freq = sorted[in_count].frequency;
      in_count++;
    } else {
      tree.left[i] = kInternalNode;
      node_freq = frequency[tree_count];
      tree.parent[tree_count] = i;
      tree_count++;
    }
    if (in_count < n && (tree_count == i || sorted[in_count].frequency <= frequency[tree_count])) {
      tree.right[i] = sorted[in_count].value;
      frequency[i] = node_freq + sorted[in_count].frequency;
      in_count++;
    } else {
      tree.right[i] = kInternalNode;
      frequency[i] = node_freq + frequency[tree_count];
      tree.parent[tree_count] = i;
      tree_count++;
    }
  }
  tree.parent[n - 2] = 0;  // root
  if (node_freqs) *node_freqs = std::move(frequency);
  return tree;
}

LengthHistogram compute_bit_length(const Tree& tree) {
  LengthHistogram hist{};
  const std::size_t nodes = tree.node_count();
  if (nodes == 0) return hist;

  // child_depth[i]: depth of node i's children. Walking from the root,
  // which has the largest index, reaches every parent before its children.
  std::vector<std::uint32_t> child_depth(nodes, 0);
  child_depth[nodes - 1] = 1;
  for (std::size_t idx = nodes; idx-- > 0;) {
    std::uint32_t d = (idx == nodes - 1) ? 1u : child_depth[tree.parent[idx]] + 1u;
    child_depth[idx] = d;
    if (d >= kTreeDepth) throw std::length_error("huffman: tree deeper than supported");
    std::uint32_t leaves = (tree.left[idx] != kInternalNode) + (tree.right[idx] != kInternalNode);
    if (leaves) hist[d] += leaves;
  }
  return hist;
}

LengthHistogram truncate_tree(const LengthHistogram& hist, int max_len) {
  if (max_len < 1 || max_len >= kTreeDepth) {
    throw std::invalid_argument("huffman: bad truncation target");
  }
  std::uint64_t symbols = 0;
  for (auto c : hist) symbols += c;
  // A depth-limited prefix code exists iff n <= 2^max_len.
  if (max_len < 63 && symbols > (std::uint64_t(1) << max_len)) {
    throw std::invalid_argument("huffman: " + std::to_string(symbols) +
                                " symbols cannot fit in depth " + std::to_string(max_len));
  }

  LengthHistogram out = hist;
  int j = max_len;
  for (int i = kTreeDepth - 1; i > max_len; --i) {
    while (out[i] != 0) {
      if (out[i] < 2) {
        throw std::invalid_argument("huffman: malformed length histogram");
      }
      if (j == max_len) {
        // Deepest leaf below the limit becomes an internal node.
        do {
          --j;
          if (j <= 0) throw std::invalid_argument("huffman: no leaf available below the limit");
        } while (out[j] == 0);
      }
      out[j] -= 1;
      out[j + 1] += 2;      // the former leaf at j plus one symbol moved up from i
      out[i - 1] += 1;      // the moved symbol's sibling rises one level
      out[i] -= 2;
      ++j;
    }
  }
  return out;
}

std::array<std::uint8_t, kInputSymbols> canonize_tree(const std::vector<Symbol>& sorted,
                                                      const LengthHistogram& hist) {
  std::uint64_t total = 0;
  for (auto c : hist) total += c;
  if (total != sorted.size()) {
    throw std::invalid_argument("huffman: histogram/symbol count mismatch");
  }
  std::array<std::uint8_t, kInputSymbols> symbol_bits{};
  int length = kTreeDepth;
  std::uint32_t count = 0;
  // Least frequent symbols take the longest codes.
  for (const Symbol& s : sorted) {
    if (count == 0) {
      do {
        --length;
        if (length <= 0) throw std::invalid_argument("huffman: histogram exhausted");
      } while (hist[length] == 0);
      count = hist[length];
    }
    symbol_bits[s.value] = static_cast<std::uint8_t>(length);
    --count;
  }
  return symbol_bits;
}

std::array<PackedCodeword, kInputSymbols> create_codewords(
    const std::array<std::uint8_t, kInputSymbols>& symbol_bits, const LengthHistogram& hist) {
  std::array<std::uint32_t, kMaxCodewordLength + 1> first_codeword{};
  first_codeword[1] = 0;
  for (int i = 2; i <= kMaxCodewordLength; ++i) {
    first_codeword[i] = (first_codeword[i - 1] + hist[i - 1]) << 1;
  }

  std::array<PackedCodeword, kInputSymbols> encoding{};
  for (std::size_t v = 0; v < kInputSymbols; ++v) {
    int length = symbol_bits[v];
    if (length == 0) {
      encoding[v] = 0;
      continue;
    }
    if (length > kMaxCodewordLength) {
      throw std::length_error("huffman: codeword longer than " +
                              std::to_string(kMaxCodewordLength) + " bits");
    }
    std::uint32_t code = first_codeword[length]++;
    std::uint32_t reversed = fft::bit_reverse_index(code, 32) >> (32 - length);
    encoding[v] = (reversed << kCodewordLengthBits) | static_cast<std::uint32_t>(length);
  }
  return encoding;
}

Encoding encode(const std::array<std::uint32_t, kInputSymbols>& freqs) {
  std::vector<Symbol> filtered = filter(freqs);
  if (filtered.size() < 2) {
    throw std::invalid_argument("huffman: need at least two nonzero frequencies");
  }
  std::vector<Symbol> sorted = radix_sort(filtered);
  Tree tree = create_tree(sorted);
  LengthHistogram hist = compute_bit_length(tree);
  LengthHistogram truncated = truncate_tree(hist);
  auto symbol_bits = canonize_tree(sorted, truncated);
  Encoding out;
  out.table = create_codewords(symbol_bits, truncated);
  out.num_nonzero = filtered.size();
  return out;
}

Encoding encode_dataflow(const std::array<std::uint32_t, kInputSymbols>& freqs,
                         bool threaded, flow::RunStats* stats) {
  using SymbolVec = std::vector<Symbol>;
  using Bits = std::array<std::uint8_t, kInputSymbols>;

  flow::Stream<SymbolVec> c_filtered("huff.filtered", 2);
  // The sorted list and the truncated histogram each feed two stages, so
  // each producer writes twin channels.
  flow::Stream<SymbolVec> c_sorted_tree("huff.sorted.tree", 2);
  flow::Stream<SymbolVec> c_sorted_canon("huff.sorted.canonize", 2);
  flow::Stream<Tree> c_tree("huff.tree", 2);
  flow::Stream<LengthHistogram> c_hist("huff.lengths", 2);
  flow::Stream<LengthHistogram> c_trunc_canon("huff.truncated.canonize", 2);
  flow::Stream<LengthHistogram> c_trunc_code("huff.truncated.codewords", 2);
  flow::Stream<Bits> c_bits("huff.symbolbits", 2);
  flow::Stream<Encoding> c_out("huff.encoding", 2);

  flow::Pipeline pipe;
  std::array<std::uint32_t, kInputSymbols> input = freqs;
  pipe.add_stage({"filter",
                  [&]() {
                    SymbolVec f = filter(input);
                    if (f.size() < 2) {
                      throw std::invalid_argument("huffman: need at least two nonzero frequencies");
                    }
                    c_filtered.push(std::move(f));
                  },
                  {},
                  {&c_filtered}});
  pipe.add_stage({"sort",
                  [&]() {
                    SymbolVec s = radix_sort(c_filtered.pop().value());
                    c_sorted_tree.push(s);
                    c_sorted_canon.push(std::move(s));
                  },
                  {&c_filtered},
                  {&c_sorted_tree, &c_sorted_canon}});
  pipe.add_stage({"create_tree",
                  [&]() { c_tree.push(create_tree(c_sorted_tree.pop().value())); },
                  {&c_sorted_tree},
                  {&c_tree}});
  pipe.add_stage({"compute_bit_length",
                  [&]() { c_hist.push(compute_bit_length(c_tree.pop().value())); },
                  {&c_tree},
                  {&c_hist}});
  pipe.add_stage({"truncate_tree",
                  [&]() {
                    LengthHistogram t = truncate_tree(c_hist.pop().value());
                    c_trunc_canon.push(t);
                    c_trunc_code.push(t);
                  },
                  {&c_hist},
                  {&c_trunc_canon, &c_trunc_code}});
  pipe.add_stage({"canonize_tree",
                  [&]() {
                    SymbolVec sorted = c_sorted_canon.pop().value();
                    LengthHistogram t = c_trunc_canon.pop().value();
                    c_bits.push(canonize_tree(sorted, t));
                  },
                  {&c_sorted_canon, &c_trunc_canon},
                  {&c_bits}});
  pipe.add_stage({"create_codewords",
                  [&]() {
                    Bits bits = c_bits.pop().value();
                    LengthHistogram t = c_trunc_code.pop().value();
                    Encoding enc;
                    enc.table = create_codewords(bits, t);
                    for (auto b : bits) enc.num_nonzero += (b != 0);
                    c_out.push(enc);
                  },
                  {&c_bits, &c_trunc_code},
                  {&c_out}});

  flow::RunStats rs = pipe.run(1, threaded);
  if (stats) *stats = rs;
  return c_out.pop().value();
}

}  // namespace huffman
}  // namespace sk
