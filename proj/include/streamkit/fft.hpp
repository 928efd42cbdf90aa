#ifndef STREAMKIT_FFT_HPP
#define STREAMKIT_FFT_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "streamkit/flow.hpp"

namespace sk {
namespace fft {

// Complex block kept as separate real/imaginary arrays.
struct Spectrum {
  std::vector<double> real;
  std::vector<double> imag;

  Spectrum() = default;
  explicit Spectrum(std::size_t n) : real(n, 0.0), imag(n, 0.0) {}
  Spectrum(std::vector<double> re, std::vector<double> im);

  std::size_t size() const { return real.size(); }
};

// One rotation around the unit circle stored as a half table:
// cos_table[i] = cos(2*pi*i/N), sin_table[i] = sin(2*pi*i/N) for i < N/2.
// Tables are built once per N and cached.
struct TwiddleTable {
  std::size_t n = 0;
  std::vector<double> cos_table;
  std::vector<double> sin_table;

  // (cos, sin) of 2*pi*idx/N for any idx in [0, N), folding the second half
  // by sign symmetry.
  std::pair<double, double> phasor(std::size_t idx) const;

  static const TwiddleTable& for_size(std::size_t n);
};

// Direct transform G[k] = sum_n g[n] * e^(-j*2*pi*k*n/N), indexing the one
// rotation table with (k*n mod N). Any N >= 1.
Spectrum dft(const Spectrum& sig);

// i with its low `bits` bits reversed.
std::uint32_t bit_reverse_index(std::uint32_t i, int bits);

// In-place permutation swapping element i with the bit reversed index; each
// pair is swapped once. N must be a power of two.
void bit_reverse_permute(Spectrum& sig);

// Butterflies for one stage (1-based, up to log2 N): span 2^stage, twiddle
// stride N/2^stage. Input must be bit-reverse permuted with earlier stages
// already applied. Out of place.
Spectrum fft_stage(const Spectrum& sig, int stage);

// Bit reversal followed by stages 1..log2 N.
Spectrum fft(const Spectrum& sig);

// Conjugate, forward transform, conjugate, scale by 1/N.
Spectrum ifft(const Spectrum& spec);

// The same computation staged over log2(N)+1 dataflow processes handing the
// whole block across bounded streams. Bit-identical to fft().
Spectrum fft_dataflow(const Spectrum& sig, bool threaded = false,
                      flow::RunStats* stats = nullptr);

}  // namespace fft
}  // namespace sk

#endif
