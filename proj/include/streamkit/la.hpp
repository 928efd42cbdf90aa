#ifndef STREAMKIT_LA_HPP
#define STREAMKIT_LA_HPP

#include <cstddef>
#include <vector>

#include "streamkit/flow.hpp"

namespace sk {
namespace la {

using Vec = std::vector<double>;

// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  static Matrix identity(std::size_t n);
  bool operator==(const Matrix&) const = default;
};

// Compressed row storage: values and their columns, plus the index in
// `values` where each row starts. rowPtr[0] == 0, rowPtr[n] == NNZ.
struct CrsMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<std::size_t> column_index;
  std::vector<std::size_t> row_ptr;

  void validate() const;  // throws on a broken invariant
};

Vec matvec(const Matrix& m, const Vec& v);
Matrix matmul(const Matrix& a, const Matrix& b);

Vec spmv(const CrsMatrix& m, const Vec& x);

CrsMatrix dense_to_crs(const Matrix& m);
Matrix crs_to_dense(const CrsMatrix& m);

// One beat of a block stream: one element from each of BLOCK_SIZE rows (or
// columns).
struct BlockVec {
  std::vector<double> lane;
};

struct BlockMat {
  std::size_t block_size = 0;
  std::vector<double> data;  // block_size x block_size, row major

  BlockMat() = default;
  explicit BlockMat(std::size_t b) : block_size(b), data(b * b, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return data[r * block_size + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * block_size + c]; }
};

// Caller-owned state for the streaming block multiply: the cached A row
// block survives across calls while consecutive B column blocks stream by.
struct BlockMatmulState {
  std::size_t size = 0;        // full matrix dimension
  std::size_t block_size = 0;
  std::vector<double> a_block;  // block_size x size, row major

  BlockMatmulState(std::size_t n, std::size_t b);
};

// One call of the streaming kernel. Call number `it` (0-based) decides
// whether a fresh A row block is pulled: only when it % (size/block_size)
// == 0. B columns arrive on every call, `size` beats of BLOCK_SIZE values.
// Returns the block_size x block_size partial product.
BlockMat blockmatmul(flow::Stream<BlockVec>& a_rows, flow::Stream<BlockVec>& b_cols,
                     std::size_t it, BlockMatmulState& state);

// Drives blockmatmul (size/block_size)^2 times with A row reuse across
// consecutive column blocks and assembles the full product.
Matrix blocked_matmul_full(const Matrix& a, const Matrix& b, std::size_t block_size,
                           flow::RunStats* stats = nullptr);

}  // namespace la
}  // namespace sk

#endif
