#include "streamkit/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sk {
namespace fft {

namespace {

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_of(std::size_t n) {
  int b = 0;
  while ((std::size_t(1) << b) < n) ++b;
  return b;
}

void require_pow2(const Spectrum& sig, const char* who) {
  if (!is_pow2(sig.size())) {
    throw std::invalid_argument(std::string(who) + ": size must be a power of two, got " +
                                std::to_string(sig.size()));
  }
}

}  // namespace

Spectrum::Spectrum(std::vector<double> re, std::vector<double> im)
    : real(std::move(re)), imag(std::move(im)) {
  if (real.size() != imag.size()) {
    throw std::invalid_argument("spectrum: real/imag lengths differ");
  }
}

std::pair<double, double> TwiddleTable::phasor(std::size_t idx) const {
  idx %= n;
  if (n == 1) return {1.0, 0.0};
  if (idx < n / 2) return {cos_table[idx], sin_table[idx]};
  return {-cos_table[idx - n / 2], -sin_table[idx - n / 2]};
}

const TwiddleTable& TwiddleTable::for_size(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, TwiddleTable> cache;
  if (n == 0) throw std::invalid_argument("twiddle table: empty size");
  if (n % 2 != 0 && n != 1) {
    throw std::invalid_argument("twiddle table: size must be even");
  }
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    TwiddleTable t;
    t.n = n;
    t.cos_table.resize(n / 2);
    t.sin_table.resize(n / 2);
    for (std::size_t i = 0; i < n / 2; ++i) {
      double w = 2.0 * std::numbers::pi * double(i) / double(n);
      t.cos_table[i] = std::cos(w);
      t.sin_table[i] = std::sin(w);
    }
    it = cache.emplace(n, std::move(t)).first;
  }
  return it->second;
}

Spectrum dft(const Spectrum& sig) {
  const std::size_t n = sig.size();
  if (n == 0) throw std::invalid_argument("dft: empty signal");
  Spectrum out(n);
  if (n % 2 == 0 || n == 1) {
    const TwiddleTable& tw = TwiddleTable::for_size(n);
    for (std::size_t k = 0; k < n; ++k) {
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        auto [c, s] = tw.phasor((k * j) % n);
        re += sig.real[j] * c + sig.imag[j] * s;
        im += -sig.real[j] * s + sig.imag[j] * c;
      }
      out.real[k] = re;
      out.imag[k] = im;
    }
  } else {
    // Odd sizes skip the half-table fold.
    for (std::size_t k = 0; k < n; ++k) {
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double w = 2.0 * std::numbers::pi * double((k * j) % n) / double(n);
        double c = std::cos(w), s = std::sin(w);
        re += sig.real[j] * c + sig.imag[j] * s;
        im += -sig.real[j] * s + sig.imag[j] * c;
      }
      out.real[k] = re;
      out.imag[k] = im;
    }
  }
  return out;
}

std::uint32_t bit_reverse_index(std::uint32_t i, int bits) {
  if (bits < 0 || bits > 32) throw std::invalid_argument("bit_reverse_index: bits in 0..32");
  std::uint32_t rev = 0;
  for (int b = 0; b < bits; ++b) {
    rev = (rev << 1) | (i & 1);
    i >>= 1;
  }
  return rev;
}

void bit_reverse_permute(Spectrum& sig) {
  require_pow2(sig, "bit_reverse_permute");
  const int bits = log2_of(sig.size());
  for (std::uint32_t i = 0; i < sig.size(); ++i) {
    std::uint32_t rev = bit_reverse_index(i, bits);
    if (i < rev) {
      std::swap(sig.real[i], sig.real[rev]);
      std::swap(sig.imag[i], sig.imag[rev]);
    }
  }
}

Spectrum fft_stage(const Spectrum& sig, int stage) {
  require_pow2(sig, "fft_stage");
  const std::size_t n = sig.size();
  const int stages = log2_of(n);
  if (stage < 1 || stage > stages) {
    throw std::invalid_argument("fft_stage: stage " + std::to_string(stage) +
                                " out of 1.." + std::to_string(stages));
  }
  const TwiddleTable& tw = TwiddleTable::for_size(n);
  const std::size_t span = std::size_t(1) << stage;  // butterfly group width
  const std::size_t half = span / 2;
  const std::size_t stride = n / span;  // twiddle index step

  Spectrum out = sig;
  for (std::size_t j = 0; j < half; ++j) {
    double c = tw.cos_table[j * stride];
    double s = tw.sin_table[j * stride];
    for (std::size_t k = j; k < n; k += span) {
      std::size_t lo = k, hi = k + half;
      // t = W * x[hi], W = e^(-j*2*pi*(j*stride)/N)
      double tr = sig.real[hi] * c + sig.imag[hi] * s;
      double ti = -sig.real[hi] * s + sig.imag[hi] * c;
      out.real[lo] = sig.real[lo] + tr;
      out.imag[lo] = sig.imag[lo] + ti;
      out.real[hi] = sig.real[lo] - tr;
      out.imag[hi] = sig.imag[lo] - ti;
    }
  }
  return out;
}

Spectrum fft(const Spectrum& sig) {
  require_pow2(sig, "fft");
  Spectrum cur = sig;
  bit_reverse_permute(cur);
  const int stages = log2_of(sig.size());
  for (int s = 1; s <= stages; ++s) cur = fft_stage(cur, s);
  return cur;
}

Spectrum ifft(const Spectrum& spec) {
  require_pow2(spec, "ifft");
  const std::size_t n = spec.size();
  Spectrum conj = spec;
  for (std::size_t i = 0; i < n; ++i) conj.imag[i] = -conj.imag[i];
  Spectrum fwd = fft(conj);
  for (std::size_t i = 0; i < n; ++i) {
    fwd.real[i] /= double(n);
    fwd.imag[i] = -fwd.imag[i] / double(n);
  }
  return fwd;
}

Spectrum fft_dataflow(const Spectrum& sig, bool threaded, flow::RunStats* stats) {
  require_pow2(sig, "fft");
  const int stages = log2_of(sig.size());

  // log2(N)+1 processes: bit reversal then one process per butterfly stage,
  // whole blocks handed across streams.
  std::vector<std::unique_ptr<flow::Stream<Spectrum>>> chans;
  for (int i = 0; i <= stages + 1; ++i) {
    chans.push_back(std::make_unique<flow::Stream<Spectrum>>(
        "fft.chan" + std::to_string(i), 2));
  }

  flow::Pipeline pipe;
  pipe.add_stage({"bit_reverse",
                  [&chans]() {
                    Spectrum block = std::move(chans[0]->pop().value());
                    bit_reverse_permute(block);
                    chans[1]->push(std::move(block));
                  },
                  {chans[0].get()},
                  {chans[1].get()}});
  for (int s = 1; s <= stages; ++s) {
    pipe.add_stage({"stage" + std::to_string(s),
                    [&chans, s]() {
                      Spectrum block = std::move(chans[s]->pop().value());
                      chans[s + 1]->push(fft_stage(block, s));
                    },
                    {chans[s].get()},
                    {chans[s + 1].get()}});
  }

  chans[0]->push(sig);
  flow::RunStats rs = pipe.run(1, threaded);
  if (stats) *stats = rs;
  return std::move(chans[stages + 1]->pop().value());
}

}  // namespace fft
}  // namespace sk
