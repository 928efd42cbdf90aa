#ifndef STREAMKIT_RX_HPP
#define STREAMKIT_RX_HPP

#include <cstdint>
#include <vector>

#include "streamkit/cordic.hpp"
#include "streamkit/dsp.hpp"
#include "streamkit/fft.hpp"
#include "streamkit/flow.hpp"

namespace sk {
namespace rx {

using IQ = dsp::ComplexSample<double>;

// Gray-coded QPSK constellation, one point per 2-bit symbol:
//   0 -> (+1,+1)   1 -> (-1,+1)   3 -> (-1,-1)   2 -> (+1,-1)
// Adjacent quadrants differ in one bit.
IQ qpsk_encode(int symbol);

// Sign-based quadrant slicer; exact inverse of qpsk_encode, magnitude
// ignored.
int qpsk_decode(const IQ& x);

// Block transmitter: one QPSK point per subcarrier, then an inverse
// transform to time domain. Block length must be a power of two.
fft::Spectrum ofdm_transmit(const std::vector<int>& symbols);

// Receiver: forward transform then the slicer.
std::vector<int> ofdm_receive(const fft::Spectrum& time_domain);

// encode -> ifft -> (channel noise, amplitude `noise_amp` per component,
// seeded) -> fft -> decode. Zero noise recovers the input exactly.
std::vector<int> ofdm_roundtrip(const std::vector<int>& symbols, double noise_amp = 0.0,
                                std::uint64_t seed = 1);

// Matched filter plus Cartesian-to-polar conversion: each input sample runs
// through the complex FIR and the vectoring CORDIC. A zero filter output is
// reported as (0, 0) rather than a domain error.
void phase_detect(flow::Stream<IQ>& iq, flow::Stream<cordic::Polar>& out,
                  const std::vector<IQ>& matched_taps, const cordic::Config& cfg);

std::vector<cordic::Polar> phase_detect(const std::vector<IQ>& iq,
                                        const std::vector<IQ>& matched_taps,
                                        const cordic::Config& cfg);

}  // namespace rx
}  // namespace sk

#endif
