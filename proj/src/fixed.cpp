#include "streamkit/fixed.hpp"

#include <cmath>
#include <sstream>

namespace sk {
namespace fixed {

namespace {

// Limit on |I| so ldexpl scaling stays exact and far from the long double
// exponent range.
constexpr int kMaxIntegerBitsMagnitude = 512;

int128 one_shl(int k) { return int128(1) << k; }

int128 wrap_raw(int128 v, const Format& fmt) {
  const int w = fmt.total_bits;
  unsigned __int128 mask = (w == 128) ? ~(unsigned __int128)0
                                      : ((unsigned __int128)1 << w) - 1;
  unsigned __int128 bits = (unsigned __int128)v & mask;
  if (fmt.is_signed && (bits >> (w - 1)) != 0) {
    return (int128)(bits | ~mask);  // sign extend
  }
  return (int128)bits;
}

int128 handle_overflow(int128 v, const Format& fmt, Overflow o) {
  if (v >= fmt.min_raw() && v <= fmt.max_raw()) return v;
  if (o == Overflow::saturate) {
    return v < fmt.min_raw() ? fmt.min_raw() : fmt.max_raw();
  }
  return wrap_raw(v, fmt);
}

// Rounds raw/2^k per mode; k >= 1. Exact integer arithmetic throughout.
int128 round_shift(int128 raw, int k, Rounding r) {
  const int128 q = raw >> k;  // floor
  const int128 rem = raw - (q << k);
  const int128 half = one_shl(k - 1);
  switch (r) {
    case Rounding::to_negative_infinity:
      return q;
    case Rounding::to_positive_infinity:
      return rem != 0 ? q + 1 : q;
    case Rounding::to_zero:
      return (raw < 0 && rem != 0) ? q + 1 : q;
    case Rounding::away_from_zero:
      if (rem == 0) return q;
      return raw < 0 ? q : q + 1;
    case Rounding::nearest_even:
      if (rem < half) return q;
      if (rem > half) return q + 1;
      return (q & 1) ? q + 1 : q;
  }
  return q;
}

std::int64_t narrow_raw(int128 v) { return (std::int64_t)v; }

}  // namespace

Format::Format(int w, int i, bool s) : total_bits(w), integer_bits(i), is_signed(s) {
  if (w < 1 || w > 64) {
    throw std::invalid_argument("fixed: total bits must be in 1..64, got " + std::to_string(w));
  }
  if (i < -kMaxIntegerBitsMagnitude || i > kMaxIntegerBitsMagnitude) {
    throw std::invalid_argument("fixed: integer bits out of supported range");
  }
}

int128 Format::max_raw() const {
  return one_shl(total_bits - (is_signed ? 1 : 0)) - 1;
}

int128 Format::min_raw() const {
  return is_signed ? -one_shl(total_bits - 1) : int128(0);
}

long double Format::quantum() const {
  return ldexpl(1.0L, integer_bits - total_bits);
}

long double Format::max_value() const {
  return (long double)max_raw() * quantum();
}

long double Format::min_value() const {
  return (long double)min_raw() * quantum();
}

Format parse_format(const std::string& text) {
  std::string body = text;
  if (body.rfind("fixed<", 0) == 0 && body.back() == '>') {
    body = body.substr(6, body.size() - 7);
  }
  std::istringstream in(body);
  int w = 0, i = 0;
  char comma = 0;
  if (!(in >> w >> comma >> i) || comma != ',') {
    throw std::invalid_argument("fixed: cannot parse format '" + text + "'");
  }
  bool s = true;
  if (in >> comma && comma == ',') {
    char kind = 0;
    in >> kind;
    if (kind == 'u') {
      s = false;
    } else if (kind != 's') {
      throw std::invalid_argument("fixed: signedness must be 's' or 'u' in '" + text + "'");
    }
  }
  return Format(w, i, s);
}

std::string to_string(const Format& fmt) {
  std::ostringstream out;
  out << "fixed<" << fmt.total_bits << "," << fmt.integer_bits << ","
      << (fmt.is_signed ? 's' : 'u') << ">";
  return out.str();
}

Value::Value(Format fmt, std::int64_t raw_bits) : fmt_(fmt), raw_(raw_bits) {
  int128 v = fmt.is_signed ? (int128)raw_bits
                           : (int128)(std::uint64_t)raw_bits;
  if (v < fmt.min_raw() || v > fmt.max_raw()) {
    throw std::invalid_argument("fixed: raw pattern does not fit " + to_string(fmt));
  }
}

int128 Value::raw_extended() const {
  return fmt_.is_signed ? (int128)raw_ : (int128)(std::uint64_t)raw_;
}

long double Value::value_exact() const {
  return (long double)raw_extended() * fmt_.quantum();
}

double Value::value() const { return (double)value_exact(); }

Value zero(const Format& fmt) { return Value(fmt, 0); }

Value quantize(double x, const Format& fmt, Rounding r, Overflow o) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("fixed: quantize requires a finite input");
  }
  // Scale so the quantum becomes 1. Power-of-two scaling of a long double is
  // exact, so the tie tests below are exact too.
  long double s = ldexpl((long double)x, fmt.frac_bits());
  if (fabsl(s) >= ldexpl(1.0L, 100)) {
    // Way outside any 64-bit format; resolve by overflow handling alone.
    int128 huge = s < 0 ? -one_shl(100) : one_shl(100);
    if (o == Overflow::wrap) {
      throw std::invalid_argument("fixed: input too large to wrap meaningfully");
    }
    return Value(fmt, narrow_raw(handle_overflow(huge, fmt, o)));
  }
  long double fl = floorl(s);
  long double frac = s - fl;
  int128 q = (int128)fl;
  int128 rounded;
  switch (r) {
    case Rounding::to_negative_infinity:
      rounded = q;
      break;
    case Rounding::to_positive_infinity:
      rounded = frac > 0 ? q + 1 : q;
      break;
    case Rounding::to_zero:
      rounded = (s < 0 && frac > 0) ? q + 1 : q;
      break;
    case Rounding::away_from_zero:
      if (frac == 0) rounded = q;
      else rounded = s < 0 ? q : q + 1;
      break;
    case Rounding::nearest_even:
    default:
      if (frac < 0.5L) rounded = q;
      else if (frac > 0.5L) rounded = q + 1;
      else rounded = (q & 1) ? q + 1 : q;
      break;
  }
  return Value(fmt, narrow_raw(handle_overflow(rounded, fmt, o)));
}

namespace {

struct Aligned {
  int128 a = 0;
  int128 b = 0;
  int frac = 0;  // shared fractional bit count
};

Aligned align(const Value& x, const Value& y) {
  Aligned out;
  out.frac = std::max(x.format().frac_bits(), y.format().frac_bits());
  out.a = x.raw_extended() << (out.frac - x.format().frac_bits());
  out.b = y.raw_extended() << (out.frac - y.format().frac_bits());
  return out;
}

Format sum_format(const Value& a, const Value& b, bool force_signed) {
  int frac = std::max(a.format().frac_bits(), b.format().frac_bits());
  int ints = std::max(a.format().integer_bits, b.format().integer_bits) + 1;
  int w = ints + frac;
  if (w > 64) {
    throw WidthOverflowError("fixed: sum needs " + std::to_string(w) + " bits");
  }
  bool s = force_signed || a.format().is_signed;
  return Format(w, ints, s);
}

}  // namespace

Value add(const Value& a, const Value& b) {
  if (a.format().is_signed != b.format().is_signed) {
    throw std::invalid_argument("fixed: add requires matching signedness");
  }
  Format fmt = sum_format(a, b, false);
  Aligned al = align(a, b);
  return Value(fmt, narrow_raw(al.a + al.b));
}

Value sub(const Value& a, const Value& b) {
  if (a.format().is_signed != b.format().is_signed) {
    throw std::invalid_argument("fixed: sub requires matching signedness");
  }
  Format fmt = sum_format(a, b, true);
  Aligned al = align(a, b);
  return Value(fmt, narrow_raw(al.a - al.b));
}

Value mul(const Value& a, const Value& b) {
  int w = a.format().total_bits + b.format().total_bits;
  if (w > 64) {
    throw WidthOverflowError("fixed: product needs " + std::to_string(w) + " bits");
  }
  Format fmt(w, a.format().integer_bits + b.format().integer_bits,
             a.format().is_signed || b.format().is_signed);
  return Value(fmt, narrow_raw(a.raw_extended() * b.raw_extended()));
}

Value convert(const Value& a, const Format& fmt, Rounding r, Overflow o) {
  int shift = fmt.frac_bits() - a.format().frac_bits();
  int128 v;
  if (shift >= 0) {
    v = a.raw_extended() << shift;
  } else {
    v = round_shift(a.raw_extended(), -shift, r);
  }
  return Value(fmt, narrow_raw(handle_overflow(v, fmt, o)));
}

Value shift_right_arith(const Value& a, int k) {
  if (k < 0 || k >= 64) {
    throw std::invalid_argument("fixed: shift amount must be in 0..63");
  }
  return Value(a.format(), narrow_raw(a.raw_extended() >> k));
}

Value negate(const Value& a) {
  Format fmt = sum_format(a, a, true);
  return Value(fmt, narrow_raw(-a.raw_extended()));
}

int compare(const Value& a, const Value& b) {
  // Exact: any W<=64 raw fits the 64-bit long double mantissa and the
  // power-of-two scale only moves the exponent.
  long double x = a.value_exact();
  long double y = b.value_exact();
  if (x < y) return -1;
  if (x > y) return 1;
  return 0;
}

}  // namespace fixed
}  // namespace sk
