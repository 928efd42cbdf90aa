#include "streamkit/img.hpp"

#include <algorithm>
#include <stdexcept>

namespace sk {
namespace img {

Frame::Frame(std::size_t h, std::size_t w) : height(h), width(w), data(h * w) {
  if (h > kMaxHeight || w > kMaxWidth) {
    throw std::invalid_argument("frame exceeds configured bounds");
  }
}

Kernel3x3 identity_kernel() { return Kernel3x3{}; }

Kernel3x3 box_blur_kernel() {
  Kernel3x3 k;
  k.coeff = {1, 1, 1, 1, 1, 1, 1, 1, 1};
  k.divisor = 9;
  return k;
}

namespace {

std::uint8_t clamp_channel(int v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0, 255));
}

Pixel apply_window(const Pixel window[3][3], const Kernel3x3& k) {
  if (k.divisor == 0) throw std::invalid_argument("kernel divisor must be nonzero");
  int r = 0, g = 0, b = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r += k.at(i, j) * window[i][j].r;
      g += k.at(i, j) * window[i][j].g;
      b += k.at(i, j) * window[i][j].b;
    }
  }
  return Pixel{clamp_channel(r / k.divisor), clamp_channel(g / k.divisor),
               clamp_channel(b / k.divisor)};
}

bool interior(std::size_t row, std::size_t col, std::size_t h, std::size_t w) {
  return row >= 1 && row + 1 < h && col >= 1 && col + 1 < w;
}

}  // namespace

Frame filter2d_naive(const Frame& f, const Kernel3x3& k) {
  Frame out(f.height, f.width);
  for (std::size_t row = 0; row < f.height; ++row) {
    for (std::size_t col = 0; col < f.width; ++col) {
      if (!interior(row, col, f.height, f.width)) {
        out.at(row, col) = Pixel{};  // window leaves the frame: black
        continue;
      }
      Pixel window[3][3];
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          window[i][j] = f.at(row + i - 1, col + j - 1);
        }
      }
      out.at(row, col) = apply_window(window, k);
    }
  }
  return out;
}

namespace {

enum class Boundary { black_border, constant_zero };

// Scanline pass with the iteration space extended by one row and column:
// the pixel read at (row, col) completes the window of output (row-1,
// col-1), so the result is not shifted. Two line buffers carry the previous
// rows; the window slides one column per iteration.
Frame linebuffer_pass(const Frame& f, const Kernel3x3& k, Boundary mode,
                      std::uint64_t* input_reads) {
  const std::size_t h = f.height, w = f.width;
  Frame out(h, w);
  std::vector<Pixel> line0(w), line1(w);  // rows row-2 and row-1
  Pixel window[3][3] = {};
  std::uint64_t reads = 0;

  for (std::size_t row = 0; row <= h; ++row) {
    for (std::size_t col = 0; col <= w; ++col) {
      for (int i = 0; i < 3; ++i) {
        window[i][0] = window[i][1];
        window[i][1] = window[i][2];
      }
      if (col < w) {
        window[0][2] = line0[col];
        window[1][2] = line1[col];
        if (row < h) {
          Pixel in = f.at(row, col);
          ++reads;
          window[2][2] = in;
          line0[col] = line1[col];
          line1[col] = in;
        }
      }
      if (row == 0 || col == 0) continue;
      const std::size_t orow = row - 1, ocol = col - 1;
      if (mode == Boundary::black_border) {
        out.at(orow, ocol) =
            interior(orow, ocol, h, w) ? apply_window(window, k) : Pixel{};
      } else {
        // Window taps outside the frame contribute zero. Tap (i,j) reads
        // source pixel (row+i-2, col+j-2).
        Pixel masked[3][3] = {};
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            bool in_frame = (row + i >= 2) && (row + i - 2 < h) && (col + j >= 2) &&
                            (col + j - 2 < w);
            if (in_frame) masked[i][j] = window[i][j];
          }
        }
        out.at(orow, ocol) = apply_window(masked, k);
      }
    }
  }
  if (input_reads) *input_reads = reads;
  return out;
}

}  // namespace

Frame filter2d_linebuffer(const Frame& f, const Kernel3x3& k, std::uint64_t* input_reads) {
  return linebuffer_pass(f, k, Boundary::black_border, input_reads);
}

Frame filter2d_boundary_constant(const Frame& f, const Kernel3x3& k) {
  return linebuffer_pass(f, k, Boundary::constant_zero, nullptr);
}

Frame filter2d_linebuffer_shifted(const Frame& f, const Kernel3x3& k) {
  const std::size_t h = f.height, w = f.width;
  Frame out(h, w);
  std::vector<Pixel> line0(w), line1(w);
  Pixel window[3][3] = {};
  for (std::size_t row = 0; row < h; ++row) {
    for (std::size_t col = 0; col < w; ++col) {
      for (int i = 0; i < 3; ++i) {
        window[i][0] = window[i][1];
        window[i][1] = window[i][2];
      }
      Pixel in = f.at(row, col);
      window[0][2] = line0[col];
      window[1][2] = line1[col];
      window[2][2] = in;
      line0[col] = line1[col];
      line1[col] = in;
      // The window is centered on (row-1, col-1): output lands one pixel
      // down and to the right.
      out.at(row, col) = (row >= 2 && col >= 2) ? apply_window(window, k) : Pixel{};
    }
  }
  return out;
}

}  // namespace img
}  // namespace sk
