#ifndef STREAMKIT_IMG_HPP
#define STREAMKIT_IMG_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace sk {
namespace img {

inline constexpr std::size_t kMaxHeight = 4096;
inline constexpr std::size_t kMaxWidth = 4096;

struct Pixel {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Pixel&) const = default;
};

struct Frame {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<Pixel> data;

  Frame() = default;
  Frame(std::size_t h, std::size_t w);

  Pixel& at(std::size_t row, std::size_t col) { return data[row * width + col]; }
  const Pixel& at(std::size_t row, std::size_t col) const { return data[row * width + col]; }
  bool operator==(const Frame&) const = default;
};

// 3x3 coefficient window with a normalization divisor. Channel math is
// integer: truncating division, then a clamp to [0,255].
struct Kernel3x3 {
  std::array<int, 9> coeff = {0, 0, 0, 0, 1, 0, 0, 0, 0};
  int divisor = 1;

  int at(int i, int j) const { return coeff[i * 3 + j]; }
};

Kernel3x3 identity_kernel();
Kernel3x3 box_blur_kernel();

// Windowed form: every output pixel re-reads its 3x3 neighborhood. Border
// pixels whose window leaves the frame are painted black.
Frame filter2d_naive(const Frame& f, const Kernel3x3& k);

// Single-pass scanline form with two line buffers and a 3x3 window. The
// iteration space is extended by one row and column so the output lines up
// with the windowed form exactly. Optionally reports how many input pixels
// were read.
Frame filter2d_linebuffer(const Frame& f, const Kernel3x3& k,
                          std::uint64_t* input_reads = nullptr);

// The unextended scanline variant; kept as a demonstration that without the
// extended iteration space the image lands one pixel down and to the right.
Frame filter2d_linebuffer_shifted(const Frame& f, const Kernel3x3& k);

// Boundary handling by constant extension: window taps outside the frame
// read zero, so every pixel gets a filtered value and none is forced black.
Frame filter2d_boundary_constant(const Frame& f, const Kernel3x3& k);

}  // namespace img
}  // namespace sk

#endif
