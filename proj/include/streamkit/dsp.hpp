#ifndef STREAMKIT_DSP_HPP
#define STREAMKIT_DSP_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "streamkit/fixed.hpp"

namespace sk {
namespace dsp {

// Reference lowpass taps, mirrored around the center value.
inline constexpr std::array<int, 11> kReferenceTaps = {53, 0,   -91, 0,  313, 500,
                                                       313, 0,  -91, 0,  53};

template <typename T>
struct ComplexSample {
  T i{};  // in-phase
  T q{};  // quadrature
};

// One FIR instance: taps plus its delay line, most recent sample at index 0.
// The delay line is owned here rather than in a function-local static so
// several filters can coexist.
template <typename T>
class FirState {
 public:
  FirState(std::vector<T> taps, T zero)
      : taps_(std::move(taps)), zero_(zero), shift_reg_(taps_.size(), zero) {
    if (taps_.empty()) throw std::invalid_argument("fir: empty coefficient list");
  }

  explicit FirState(std::vector<T> taps) : FirState(std::move(taps), T{}) {}

  const std::vector<T>& taps() const { return taps_; }
  const std::vector<T>& delay_line() const { return shift_reg_; }

  void reset() { shift_reg_.assign(shift_reg_.size(), zero_); }

  T zero_sample() const { return zero_; }

 private:
  template <typename U>
  friend U fir_step(FirState<U>& st, const U& x);

  std::vector<T> taps_;
  T zero_;
  std::vector<T> shift_reg_;
};

// Shift the delay line by one, insert x at index 0, return the dot product
// with the taps.
template <typename T>
T fir_step(FirState<T>& st, const T& x) {
  auto& sr = st.shift_reg_;
  for (std::size_t i = sr.size() - 1; i > 0; --i) sr[i] = sr[i - 1];
  sr[0] = x;
  T acc = st.taps_[0] * sr[0];
  for (std::size_t j = 1; j < st.taps_.size(); ++j) acc = acc + st.taps_[j] * sr[j];
  return acc;
}

// y[i] = sum_j c[j] * x[i-j], zero initial conditions, output length equals
// input length.
template <typename T>
std::vector<T> fir_block(const std::vector<T>& taps, const std::vector<T>& x,
                         T zero = T{}) {
  FirState<T> st(taps, zero);
  std::vector<T> y;
  y.reserve(x.size());
  for (const auto& v : x) y.push_back(fir_step(st, v));
  return y;
}

// Causal N-point average with zero initial conditions.
inline std::vector<double> moving_average(const std::vector<double>& x, std::size_t n) {
  if (n == 0) throw std::invalid_argument("moving_average: window must be positive");
  std::vector<double> taps(n, 1.0 / static_cast<double>(n));
  return fir_block(taps, x);
}

// Complex FIR built from four real FIRs. st_i1/st_i2 run the in-phase
// coefficients, st_q1/st_q2 the quadrature coefficients:
//   out.i = firI(x.i) - firQ(x.q)
//   out.q = firI(x.q) + firQ(x.i)
template <typename T>
ComplexSample<T> complex_fir_step(FirState<T>& st_i1, FirState<T>& st_q1,
                                  FirState<T>& st_i2, FirState<T>& st_q2,
                                  const ComplexSample<T>& x) {
  if (st_i1.taps() != st_i2.taps() || st_q1.taps() != st_q2.taps() ||
      st_i1.taps().size() != st_q1.taps().size()) {
    throw std::invalid_argument("complex fir: coefficient sets do not pair up");
  }
  T ii = fir_step(st_i1, x.i);
  T qq = fir_step(st_q1, x.q);
  T iq = fir_step(st_i2, x.q);
  T qi = fir_step(st_q2, x.i);
  return {ii - qq, iq + qi};
}

}  // namespace dsp
}  // namespace sk

#endif
