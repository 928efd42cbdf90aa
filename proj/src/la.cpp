#include "streamkit/la.hpp"

#include <stdexcept>
#include <string>

namespace sk {
namespace la {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

void CrsMatrix::validate() const {
  if (row_ptr.size() != rows + 1) throw std::invalid_argument("crs: rowPtr size != rows+1");
  if (row_ptr.front() != 0) throw std::invalid_argument("crs: rowPtr[0] != 0");
  if (row_ptr.back() != values.size()) throw std::invalid_argument("crs: rowPtr[n] != nnz");
  if (values.size() != column_index.size())
    throw std::invalid_argument("crs: values/columnIndex length mismatch");
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_ptr[i] > row_ptr[i + 1]) throw std::invalid_argument("crs: rowPtr decreasing");
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (column_index[k] >= cols) throw std::invalid_argument("crs: column out of range");
      if (k > row_ptr[i] && column_index[k] <= column_index[k - 1])
        throw std::invalid_argument("crs: columns not strictly increasing in a row");
    }
  }
}

Vec matvec(const Matrix& m, const Vec& v) {
  if (m.cols != v.size()) throw std::invalid_argument("matvec: dimension mismatch");
  Vec out(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) sum += m.at(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions disagree");
  Matrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) sum += a.at(i, k) * b.at(k, j);
      out.at(i, j) = sum;
    }
  }
  return out;
}

Vec spmv(const CrsMatrix& m, const Vec& x) {
  m.validate();
  if (x.size() != m.cols) throw std::invalid_argument("spmv: vector length != columns");
  Vec y(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double sum = 0.0;
    for (std::size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
      sum += m.values[k] * x[m.column_index[k]];
    }
    y[i] = sum;
  }
  return y;
}

CrsMatrix dense_to_crs(const Matrix& m) {
  CrsMatrix out;
  out.rows = m.rows;
  out.cols = m.cols;
  out.row_ptr.reserve(m.rows + 1);
  out.row_ptr.push_back(0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (m.at(i, j) != 0.0) {
        out.values.push_back(m.at(i, j));
        out.column_index.push_back(j);
      }
    }
    out.row_ptr.push_back(out.values.size());
  }
  return out;
}

Matrix crs_to_dense(const CrsMatrix& m) {
  m.validate();
  Matrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
      out.at(i, m.column_index[k]) = m.values[k];
    }
  }
  return out;
}

BlockMatmulState::BlockMatmulState(std::size_t n, std::size_t b)
    : size(n), block_size(b), a_block(b * n, 0.0) {
  if (b == 0 || n == 0 || n % b != 0) {
    throw std::invalid_argument("blockmatmul: size must be divisible by block size");
  }
}

BlockMat blockmatmul(flow::Stream<BlockVec>& a_rows, flow::Stream<BlockVec>& b_cols,
                     std::size_t it, BlockMatmulState& state) {
  const std::size_t b = state.block_size;
  const std::size_t n = state.size;
  const std::size_t blocks_per_row = n / b;

  // loadA: a fresh row block arrives only when a new block row begins.
  if (it % blocks_per_row == 0) {
    for (std::size_t k = 0; k < n; ++k) {
      auto beat = a_rows.pop();
      if (!beat) throw flow::PipelineError("blockmatmul: A stream underflow");
      if (beat->lane.size() != b) throw flow::PipelineError("blockmatmul: bad A beat width");
      for (std::size_t r = 0; r < b; ++r) state.a_block[r * n + k] = beat->lane[r];
    }
  }

  // partialsum: B columns stream in on every call, one beat per k.
  BlockMat out(b);
  for (std::size_t k = 0; k < n; ++k) {
    auto beat = b_cols.pop();
    if (!beat) throw flow::PipelineError("blockmatmul: B stream underflow");
    if (beat->lane.size() != b) throw flow::PipelineError("blockmatmul: bad B beat width");
    for (std::size_t r = 0; r < b; ++r) {
      for (std::size_t c = 0; c < b; ++c) {
        out.at(r, c) += state.a_block[r * n + k] * beat->lane[c];
      }
    }
  }
  return out;
}

Matrix blocked_matmul_full(const Matrix& a, const Matrix& b, std::size_t block_size,
                           flow::RunStats* stats) {
  if (a.rows != a.cols || b.rows != b.cols || a.rows != b.rows) {
    throw std::invalid_argument("blocked matmul: square equal-size operands required");
  }
  const std::size_t n = a.rows;
  if (block_size == 0 || n % block_size != 0) {
    throw std::invalid_argument("blocked matmul: size not divisible by block size");
  }
  const std::size_t blocks = n / block_size;

  // Capacity covers one full row/column block handoff.
  flow::Stream<BlockVec> a_rows("blockmm.arows", 2 * n);
  flow::Stream<BlockVec> b_cols("blockmm.bcols", 2 * n);
  BlockMatmulState state(n, block_size);
  Matrix out(n, n);

  std::size_t it = 0;
  for (std::size_t ib = 0; ib < blocks; ++ib) {
    for (std::size_t jb = 0; jb < blocks; ++jb, ++it) {
      if (it % blocks == 0) {
        for (std::size_t k = 0; k < n; ++k) {
          BlockVec beat;
          beat.lane.resize(block_size);
          for (std::size_t r = 0; r < block_size; ++r) {
            beat.lane[r] = a.at(ib * block_size + r, k);
          }
          a_rows.push(std::move(beat));
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        BlockVec beat;
        beat.lane.resize(block_size);
        for (std::size_t c = 0; c < block_size; ++c) {
          beat.lane[c] = b.at(k, jb * block_size + c);
        }
        b_cols.push(std::move(beat));
      }
      BlockMat part = blockmatmul(a_rows, b_cols, it, state);
      for (std::size_t r = 0; r < block_size; ++r) {
        for (std::size_t c = 0; c < block_size; ++c) {
          out.at(ib * block_size + r, jb * block_size + c) = part.at(r, c);
        }
      }
    }
  }

  if (stats) {
    stats->invocations["blockmatmul"] = it;
    stats->stream_reads[a_rows.name()] = a_rows.reads();
    stats->stream_writes[a_rows.name()] = a_rows.writes();
    stats->stream_reads[b_cols.name()] = b_cols.reads();
    stats->stream_writes[b_cols.name()] = b_cols.writes();
  }
  return out;
}

}  // namespace la
}  // namespace sk
