#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "streamkit/fixed.hpp"

using namespace sk::fixed;

namespace {

// Enumeration oracle: scan every representable value of the format and pick
// the one the rounding mode asks for. Independent of the shift/mask path in
// the library.
std::int64_t oracle_quantize_raw(long double x, const Format& fmt, Rounding r) {
  long double q = fmt.quantum();
  std::int64_t best_raw = 0;
  bool have = false;
  long double best_err = 0;
  for (__int128 raw = fmt.min_raw(); raw <= fmt.max_raw(); ++raw) {
    long double v = (long double)raw * q;
    bool take = false;
    long double err = fabsl(x - v);
    switch (r) {
      case Rounding::to_negative_infinity:
        take = v <= x && (!have || v > (long double)best_raw * q);
        break;
      case Rounding::to_positive_infinity:
        take = v >= x && (!have || v < (long double)best_raw * q);
        break;
      case Rounding::to_zero:
        take = (x >= 0 ? (v >= 0 && v <= x) : (v <= 0 && v >= x)) && (!have || err < best_err);
        break;
      case Rounding::away_from_zero:
        take = (x >= 0 ? v >= x : v <= x) && (!have || err < best_err);
        break;
      case Rounding::nearest_even:
        take = !have || err < best_err || (err == best_err && (raw & 1) == 0);
        break;
    }
    if (take) {
      best_raw = (std::int64_t)raw;
      best_err = err;
      have = true;
    }
  }
  REQUIRE(have);
  return best_raw;
}

}  // namespace

TEST_SUITE_BEGIN("fixed");

TEST_CASE("format range and quantum") {
  Format u10(10, 6, false);
  CHECK(u10.quantum() == doctest::Approx(1.0 / 16));
  CHECK((double)u10.max_value() == doctest::Approx(1023.0 / 16));
  CHECK((double)u10.min_value() == 0.0);

  Format s8(8, 8, true);
  CHECK((double)s8.max_value() == 127.0);
  CHECK((double)s8.min_value() == -128.0);

  CHECK_THROWS_AS(Format(0, 0, true), std::invalid_argument);
  CHECK_THROWS_AS(Format(65, 0, true), std::invalid_argument);
  // Negative and oversized integer-bit counts are legal.
  CHECK(Format(4, -2, false).quantum() == doctest::Approx(std::ldexp(1.0, -6)));
  CHECK(Format(4, 6, false).quantum() == doctest::Approx(4.0));
}

TEST_CASE("parse and print format text") {
  Format f = parse_format("fixed<18,12,u>");
  CHECK(f.total_bits == 18);
  CHECK(f.integer_bits == 12);
  CHECK_FALSE(f.is_signed);
  CHECK(to_string(f) == "fixed<18,12,u>");
  CHECK(parse_format("16,2").is_signed);
  CHECK_THROWS(parse_format("fixed<a,b>"));
}

TEST_CASE("quantize hits the published pattern for 11.25") {
  Value v = quantize(11.25, Format(10, 6, false));
  CHECK(v.raw() == 0b0010110100);
  CHECK(v.value() == 11.25);
}

TEST_CASE("rounding tables: 6 bits down to 5") {
  // Two's-complement inputs xxxx.xx reduced to xxxx.x.
  const Format src(6, 4, true), dst(5, 4, true);
  struct Row {
    double in, floor_out, even_out;
  };
  const std::vector<Row> rows = {{4.0, 4.0, 4.0},     {3.75, 3.5, 4.0},
                                 {3.5, 3.5, 3.5},     {3.25, 3.0, 3.0},
                                 {3.0, 3.0, 3.0},     {-4.0, -4.0, -4.0},
                                 {-4.25, -4.5, -4.0}, {-4.5, -4.5, -4.5},
                                 {-4.75, -5.0, -5.0}, {-5.0, -5.0, -5.0}};
  for (const Row& row : rows) {
    CAPTURE(row.in);
    Value v = quantize(row.in, src, Rounding::to_zero, Overflow::saturate);
    REQUIRE(v.value() == row.in);  // all rows exactly representable
    CHECK(convert(v, dst, Rounding::to_negative_infinity, Overflow::wrap).value() ==
          row.floor_out);
    CHECK(convert(v, dst, Rounding::nearest_even, Overflow::wrap).value() == row.even_out);
  }
  // Same numbers straight from the real line.
  CHECK(quantize(3.75, dst, Rounding::nearest_even, Overflow::wrap).value() == 4.0);
  CHECK(quantize(3.25, dst, Rounding::nearest_even, Overflow::wrap).value() == 3.0);
  CHECK(quantize(3.75, dst, Rounding::to_negative_infinity, Overflow::wrap).value() == 3.5);
}

TEST_CASE("wrapping drops most significant bits") {
  // -4.75 as 1011.0100 loses its sign bit and becomes 011.0100 = 3.25.
  Value v = quantize(-4.75, Format(8, 4, true));
  CHECK(v.value() == -4.75);
  Value wrapped = convert(v, Format(7, 3, true), Rounding::to_negative_infinity, Overflow::wrap);
  CHECK(wrapped.value() == 3.25);

  // 11.25 keeps its value down to 6 bits, then wraps to 3.25.
  Value u = quantize(11.25, Format(10, 6, false));
  CHECK(convert(u, Format(9, 5, false)).value() == 11.25);
  CHECK(convert(u, Format(8, 4, false)).value() == 11.25);
  CHECK(convert(u, Format(6, 2, false)).value() == 3.25);
}

TEST_CASE("saturation clamps to the format range") {
  CHECK(quantize(200.0, Format(8, 8, true), Rounding::nearest_even, Overflow::saturate).value() ==
        127.0);
  CHECK(quantize(-200.0, Format(8, 8, true)).value() == -128.0);
  CHECK(quantize(-5.0, Format(8, 8, false)).value() == 0.0);
}

TEST_CASE("quantize rejects non-finite input") {
  CHECK_THROWS_AS(quantize(std::nan(""), Format(8, 4, true)), std::invalid_argument);
  CHECK_THROWS_AS(quantize(INFINITY, Format(8, 4, true)), std::invalid_argument);
}

TEST_CASE("addition widens by one bit and is exact") {
  Value a = quantize(7.5, Format(5, 4, false));
  Value sum = add(a, a);
  CHECK(sum.value() == 15.0);
  CHECK(sum.format().total_bits == 6);
  CHECK(sum.format().integer_bits == 5);

  Value x = quantize(-3.25, Format(8, 4, true));
  Value z = add(x, zero(Format(8, 4, true)));
  CHECK(z.value() == -3.25);
  CHECK(z.format().total_bits == 9);
}

TEST_CASE("subtraction of unsigned operands turns signed") {
  Value three(Format(4, 4, false), 3);
  Value fifteen(Format(4, 4, false), 15);
  Value d = sub(three, fifteen);
  CHECK(d.value() == -12.0);
  CHECK(d.format().total_bits == 5);
  CHECK(d.format().is_signed);
}

TEST_CASE("multiplication is exact with width growth") {
  Value nine(Format(4, 4, false), 9);
  Value p = mul(nine, nine);
  CHECK(p.value() == 81.0);
  CHECK(p.format().total_bits == 8);

  Value x = quantize(-2.75, Format(8, 4, true));
  Value one = quantize(1.0, Format(4, 2, true));
  CHECK(mul(x, one).value() == -2.75);

  // Q-format pitfall check: 4.0 * 4.0 with 12 fractional bits each equals
  // the integer-shift oracle (a*b) >> 12 once renormalized.
  Format q(16, 4, true);
  Value four = quantize(4.0, q);
  Value prod = mul(four, four);
  CHECK(prod.value() == 16.0);
  std::int64_t shifted = (four.raw() * four.raw()) >> 12;
  CHECK(convert(prod, q).raw() == shifted);
}

TEST_CASE("width overflow past 64 bits is rejected") {
  Format wide(40, 20, true);
  Value v = quantize(1.0, wide);
  CHECK_THROWS_AS(mul(v, v), WidthOverflowError);
  Format w64(64, 32, true);
  Value big(w64, 1);
  CHECK_THROWS_AS(add(big, big), WidthOverflowError);
}

TEST_CASE("arithmetic right shift") {
  Value eight(Format(8, 8, true), 8);
  CHECK(shift_right_arith(eight, 2).value() == 2.0);
  Value minus1(Format(8, 8, true), -1);
  CHECK(shift_right_arith(minus1, 5).value() == -1.0);  // sign propagates

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Format f(12, int(rng() % 13), true);
    auto raw = std::int64_t(rng() % 4096) - 2048;
    Value v(f, raw);
    int k = int(rng() % 10);
    Value s = shift_right_arith(v, k);
    long double expect = floorl((long double)raw / ldexpl(1.0L, k)) * f.quantum();
    CHECK(s.value_exact() == expect);
  }
}

TEST_CASE("round trip widen then narrow is identity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Format f(10, int(rng() % 11), true);
    Value v(f, std::int64_t(rng() % 1024) - 512);
    Format wider(14, f.integer_bits + 2, true);
    Value w = convert(v, wider);
    CHECK(w.value_exact() == v.value_exact());  // widening is exact
    Value back = convert(w, f, Rounding::to_negative_infinity, Overflow::wrap);
    CHECK(back.raw() == v.raw());
  }
}

TEST_CASE("wrap keeps the low bits of the aligned source") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    Format src(12, int(rng() % 8), true);
    Format dst(6, int(rng() % 8), true);
    if (dst.frac_bits() > src.frac_bits()) continue;  // keep alignment exact
    Value v(src, std::int64_t(rng() % 4096) - 2048);
    Value w = convert(v, dst, Rounding::to_negative_infinity, Overflow::wrap);
    std::int64_t aligned = v.raw() >> (src.frac_bits() - dst.frac_bits());
    std::int64_t mask = (1ll << dst.total_bits) - 1;
    CHECK((w.raw() & mask) == (aligned & mask));
  }
}

TEST_CASE("exhaustive rounding against the enumeration oracle") {
  // Half-quantum sweep hits every representable value and every midpoint.
  for (int w = 1; w <= 8; ++w) {
    for (int i : {0, 2, w}) {
      for (bool sg : {false, true}) {
        Format fmt(w, i, sg);
        long double q = fmt.quantum();
        for (std::int64_t j = 2 * (std::int64_t)fmt.min_raw();
             j <= 2 * (std::int64_t)fmt.max_raw(); ++j) {
          long double x = (long double)j * q / 2;
          for (Rounding r : {Rounding::nearest_even, Rounding::to_negative_infinity,
                             Rounding::to_positive_infinity, Rounding::to_zero,
                             Rounding::away_from_zero}) {
            Value got = quantize((double)x, fmt, r, Overflow::saturate);
            std::int64_t want = oracle_quantize_raw(x, fmt, r);
            if (got.raw() != want) {
              CAPTURE(w);
              CAPTURE(i);
              CAPTURE(sg);
              CAPTURE((double)x);
              CAPTURE((int)r);
              REQUIRE(got.raw() == want);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("widening rules exhaustive through width 6") {
  for (int wa = 1; wa <= 6; ++wa) {
    for (int wb = 1; wb <= 6; ++wb) {
      for (int i : {0, 1, 3}) {
        Format fa(wa, i, true), fb(wb, i, true);
        for (auto ra = (std::int64_t)fa.min_raw(); ra <= (std::int64_t)fa.max_raw(); ++ra) {
          for (auto rb = (std::int64_t)fb.min_raw(); rb <= (std::int64_t)fb.max_raw(); ++rb) {
            Value a(fa, ra), b(fb, rb);
            Value s = add(a, b);
            Value p = mul(a, b);
            // No hidden rounding anywhere.
            REQUIRE(s.value_exact() == a.value_exact() + b.value_exact());
            REQUIRE(p.value_exact() == a.value_exact() * b.value_exact());
            // Equal-I growth rules: one bit for add, width sum for mul.
            REQUIRE(s.format().total_bits == std::max(wa, wb) + 1);
            REQUIRE(p.format().total_bits == wa + wb);
          }
        }
      }
    }
  }
}

TEST_CASE("signedness rules") {
  Value u(Format(4, 4, false), 3);
  Value s(Format(4, 4, true), 3);
  CHECK_THROWS_AS(add(u, s), std::invalid_argument);
  CHECK(mul(u, s).format().is_signed);
  CHECK_FALSE(mul(u, u).format().is_signed);
}

TEST_SUITE_END();
