#ifndef STREAMKIT_FIXED_HPP
#define STREAMKIT_FIXED_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sk {
namespace fixed {

using int128 = __int128;

enum class Rounding {
  to_negative_infinity,  // floor()
  to_positive_infinity,  // ceil()
  to_zero,               // trunc()
  away_from_zero,        // directed away from zero
  nearest_even           // convergent / banker's rounding
};

enum class Overflow {
  wrap,     // drop most significant bits
  saturate  // clamp to format min/max
};

struct WidthOverflowError : std::runtime_error {
  explicit WidthOverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Two's-complement format: W total bits, I integer bits, optional sign.
// I may be negative or larger than W; the value of a raw pattern r is
// always r * 2^(I-W).
struct Format {
  int total_bits = 32;    // W, 1..64
  int integer_bits = 32;  // I
  bool is_signed = true;

  Format() = default;
  Format(int w, int i, bool s);

  int frac_bits() const { return total_bits - integer_bits; }

  // Largest/smallest representable raw pattern.
  int128 max_raw() const;
  int128 min_raw() const;

  long double quantum() const;     // 2^(I-W)
  long double max_value() const;   // max_raw * quantum
  long double min_value() const;   // min_raw * quantum

  bool operator==(const Format&) const = default;
};

// Parses the textual form "fixed<W,I,s>" / "fixed<W,I,u>" used by CLI flags;
// "W,I" alone means signed.
Format parse_format(const std::string& text);
std::string to_string(const Format& fmt);

class Value {
 public:
  Value() = default;
  Value(Format fmt, std::int64_t raw_bits);

  const Format& format() const { return fmt_; }
  std::int64_t raw() const { return raw_; }

  // Raw pattern as a signed 128-bit integer; zero-extends unsigned formats
  // so W=64 unsigned values keep their magnitude.
  int128 raw_extended() const;

  double value() const;            // may round for W > 53
  long double value_exact() const; // exact for every W <= 64

  bool is_zero() const { return raw_ == 0; }

 private:
  Format fmt_{};
  std::int64_t raw_ = 0;
};

// Zero in the given format.
Value zero(const Format& fmt);

// Rounds a real number into fmt per the rounding mode, then applies overflow
// handling. NaN/infinity inputs are a contract violation.
Value quantize(double x, const Format& fmt, Rounding r = Rounding::nearest_even,
               Overflow o = Overflow::saturate);

// Exact sum: binary points aligned, result grows one integer bit, so no
// rounding or overflow can occur. Operands must share signedness.
Value add(const Value& a, const Value& b);

// Exact difference; the result is always signed (the growth bit becomes the
// sign bit when subtracting unsigned operands).
Value sub(const Value& a, const Value& b);

// Exact product: W = Wa+Wb, I = Ia+Ib. Result is signed if either operand is.
Value mul(const Value& a, const Value& b);

// Re-expresses a in fmt. Widening is exact (sign/zero extension); narrowing
// rounds then overflow-handles. Defaults mirror hardware: truncate + wrap.
Value convert(const Value& a, const Format& fmt,
              Rounding r = Rounding::to_negative_infinity,
              Overflow o = Overflow::wrap);

// Multiply by 2^-k with floor semantics on the raw integer; format unchanged.
Value shift_right_arith(const Value& a, int k);

Value negate(const Value& a);  // exact, widens by one bit, signed result

// Exact comparison of values (formats may differ).
int compare(const Value& a, const Value& b);

inline Value operator+(const Value& a, const Value& b) { return add(a, b); }
inline Value operator-(const Value& a, const Value& b) { return sub(a, b); }
inline Value operator*(const Value& a, const Value& b) { return mul(a, b); }
inline bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }
inline bool operator<=(const Value& a, const Value& b) { return compare(a, b) <= 0; }
inline bool operator>(const Value& a, const Value& b) { return compare(a, b) > 0; }
inline bool operator>=(const Value& a, const Value& b) { return compare(a, b) >= 0; }
inline bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }

}  // namespace fixed
}  // namespace sk

#endif
