#include "streamkit/rx.hpp"

#include <random>
#include <stdexcept>

namespace sk {
namespace rx {

IQ qpsk_encode(int symbol) {
  switch (symbol) {
    case 0: return {1.0, 1.0};
    case 1: return {-1.0, 1.0};
    case 3: return {-1.0, -1.0};
    case 2: return {1.0, -1.0};
    default: throw std::invalid_argument("qpsk: symbol must be 0..3");
  }
}

int qpsk_decode(const IQ& x) {
  if (x.i >= 0) return x.q >= 0 ? 0 : 2;
  return x.q >= 0 ? 1 : 3;
}

fft::Spectrum ofdm_transmit(const std::vector<int>& symbols) {
  const std::size_t n = symbols.size();
  if (n < 4 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("ofdm: block length must be a power of two >= 4");
  }
  fft::Spectrum freq(n);
  for (std::size_t i = 0; i < n; ++i) {
    IQ p = qpsk_encode(symbols[i]);
    freq.real[i] = p.i;
    freq.imag[i] = p.q;
  }
  return fft::ifft(freq);
}

std::vector<int> ofdm_receive(const fft::Spectrum& time_domain) {
  fft::Spectrum freq = fft::fft(time_domain);
  std::vector<int> out(freq.size());
  for (std::size_t i = 0; i < freq.size(); ++i) {
    out[i] = qpsk_decode(IQ{freq.real[i], freq.imag[i]});
  }
  return out;
}

std::vector<int> ofdm_roundtrip(const std::vector<int>& symbols, double noise_amp,
                                std::uint64_t seed) {
  fft::Spectrum tx = ofdm_transmit(symbols);
  if (noise_amp > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_amp);
    for (std::size_t i = 0; i < tx.size(); ++i) {
      tx.real[i] += noise(rng);
      tx.imag[i] += noise(rng);
    }
  }
  return ofdm_receive(tx);
}

void phase_detect(flow::Stream<IQ>& iq, flow::Stream<cordic::Polar>& out,
                  const std::vector<IQ>& matched_taps, const cordic::Config& cfg) {
  std::vector<double> taps_i, taps_q;
  taps_i.reserve(matched_taps.size());
  taps_q.reserve(matched_taps.size());
  for (const IQ& t : matched_taps) {
    taps_i.push_back(t.i);
    taps_q.push_back(t.q);
  }
  dsp::FirState<double> fir_i1(taps_i), fir_q1(taps_q), fir_i2(taps_i), fir_q2(taps_q);

  while (auto sample = iq.pop()) {
    IQ filtered = dsp::complex_fir_step(fir_i1, fir_q1, fir_i2, fir_q2, *sample);
    if (filtered.i == 0.0 && filtered.q == 0.0) {
      out.push(cordic::Polar{0.0, 0.0});
    } else {
      out.push(cfg.cart2pol(filtered.i, filtered.q));
    }
  }
}

std::vector<cordic::Polar> phase_detect(const std::vector<IQ>& iq,
                                        const std::vector<IQ>& matched_taps,
                                        const cordic::Config& cfg) {
  flow::Stream<IQ> in("phasedetect.in", iq.size() + 1);
  flow::Stream<cordic::Polar> out("phasedetect.out", iq.size() + 1);
  for (const IQ& s : iq) in.push(s);
  in.close();
  phase_detect(in, out, matched_taps, cfg);
  out.close();
  std::vector<cordic::Polar> result;
  while (auto p = out.pop()) result.push_back(*p);
  return result;
}

}  // namespace rx
}  // namespace sk
