#ifndef STREAMKIT_HUFFMAN_HPP
#define STREAMKIT_HUFFMAN_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "streamkit/flow.hpp"

namespace sk {
namespace huffman {

inline constexpr std::size_t kInputSymbols = 256;  // 8-bit alphabet
inline constexpr int kTreeDepth = 64;              // up to 64-bit frequencies
inline constexpr int kMaxCodewordLength = 27;      // rebalanced tree height
inline constexpr int kCodewordLengthBits = 5;      // bits to store a length

struct Symbol {
  std::uint16_t value = 0;      // 10 bits used
  std::uint32_t frequency = 0;
};

// Huffman tree as three flat arrays indexed by intermediate-node id. A child
// entry is either a symbol value or kInternalNode; nodes are created bottom
// up so every parent index exceeds its children and the root (last node)
// gets parent 0 by convention.
inline constexpr std::uint16_t kInternalNode = 0xFFFF;

struct Tree {
  std::vector<std::uint16_t> left;
  std::vector<std::uint16_t> right;
  std::vector<std::size_t> parent;

  std::size_t node_count() const { return parent.size(); }
};

// counts[l] = number of codewords of bit length l, l in [0, kTreeDepth).
using LengthHistogram = std::array<std::uint32_t, kTreeDepth>;

// Packed result for one symbol: bit-reversed codeword in the high
// kMaxCodewordLength bits, length in the low kCodewordLengthBits bits.
using PackedCodeword = std::uint32_t;

inline std::uint32_t packed_length(PackedCodeword p) {
  return p & ((1u << kCodewordLengthBits) - 1);
}
inline std::uint32_t packed_reversed_bits(PackedCodeword p) {
  return p >> kCodewordLengthBits;
}

// Drops zero-frequency entries; survivors keep ascending value order.
std::vector<Symbol> filter(const std::array<std::uint32_t, kInputSymbols>& freqs);

// Ascending by frequency, radix 16: eight counting-sort passes over 4-bit
// digits, least significant first. Stable.
std::vector<Symbol> radix_sort(std::vector<Symbol> symbols);

// Two-queue construction over the frequency-sorted symbols. On a frequency
// tie the symbol is consumed before the intermediate node. Needs n >= 2.
Tree create_tree(const std::vector<Symbol>& sorted, std::vector<std::uint64_t>* node_freqs = nullptr);

// Histogram of symbol depths, found by walking nodes from the root (largest
// index) down so each node's depth is known before its children's.
LengthHistogram compute_bit_length(const Tree& tree);

// Rebalances the histogram until no count sits above max_len, preserving
// the total symbol count and the Kraft sum. Errors when no prefix code of
// that depth can hold the symbols.
LengthHistogram truncate_tree(const LengthHistogram& hist, int max_len = kMaxCodewordLength);

// Walks symbols from least to most frequent handing out lengths from the
// deepest populated histogram level upward. symbol_bits[v] = length of v's
// codeword, 0 for absent symbols.
std::array<std::uint8_t, kInputSymbols> canonize_tree(const std::vector<Symbol>& sorted,
                                                      const LengthHistogram& hist);

// first_codeword(1) = 0; first_codeword(i) = (first_codeword(i-1) +
// counts(i-1)) << 1. Symbols are visited in ascending value order and packed
// with the codeword bit-reversed in the high bits.
std::array<PackedCodeword, kInputSymbols> create_codewords(
    const std::array<std::uint8_t, kInputSymbols>& symbol_bits, const LengthHistogram& hist);

struct Encoding {
  std::array<PackedCodeword, kInputSymbols> table{};
  std::size_t num_nonzero = 0;
};

// The full seven-stage pipeline, run as plain calls.
Encoding encode(const std::array<std::uint32_t, kInputSymbols>& freqs);

// The same stages as a dataflow pipeline with duplicated channels where two
// consumers need one producer's data. Output matches encode() exactly.
Encoding encode_dataflow(const std::array<std::uint32_t, kInputSymbols>& freqs,
                         bool threaded = false, flow::RunStats* stats = nullptr);

}  // namespace huffman
}  // namespace sk

#endif
