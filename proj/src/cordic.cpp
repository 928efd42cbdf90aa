#include "streamkit/cordic.hpp"

#include <cmath>
#include <tuple>
#include <numbers>
#include <stdexcept>

namespace sk {
namespace cordic {

namespace fx = sk::fixed;

double gain(int n) {
  if (n < 1) throw std::invalid_argument("cordic: need at least one iteration");
  double g = 1.0;
  for (int i = 0; i < n; ++i) g *= std::sqrt(1.0 + std::ldexp(1.0, -2 * i));
  return g;
}

std::pair<double, double> rotate_step(double x, double y, int sigma, int i) {
  if (i < 0) throw std::invalid_argument("cordic: negative step index");
  double xs = std::ldexp(y, -i);
  double ys = std::ldexp(x, -i);
  return {x - sigma * xs, y + sigma * ys};
}

std::pair<fx::Value, fx::Value> rotate_step(const fx::Value& x, const fx::Value& y,
                                            int sigma, int i) {
  if (i < 0) throw std::invalid_argument("cordic: negative step index");
  const fx::Format& fmt = x.format();
  fx::Value xs = fx::shift_right_arith(y, i);
  fx::Value ys = fx::shift_right_arith(x, i);
  fx::Value nx = sigma > 0 ? fx::sub(x, xs) : fx::add(x, xs);
  fx::Value ny = sigma > 0 ? fx::add(y, ys) : fx::sub(y, ys);
  // Growth bit from the add is discarded; in-range CORDIC state never uses it.
  return {fx::convert(nx, fmt, fx::Rounding::nearest_even, fx::Overflow::saturate),
          fx::convert(ny, fmt, fx::Rounding::nearest_even, fx::Overflow::saturate)};
}

Config::Config(int iterations, bool gain_compensated, std::optional<fx::Format> fmt)
    : iterations_(iterations), gain_compensated_(gain_compensated), fmt_(fmt) {
  if (iterations < 1) throw std::invalid_argument("cordic: need at least one iteration");
  angles_.reserve(iterations);
  for (int i = 0; i < iterations; ++i) angles_.push_back(std::atan(std::ldexp(1.0, -i)));
  if (fmt_) {
    angles_fixed_.reserve(iterations);
    for (double a : angles_) angles_fixed_.push_back(fx::quantize(a, *fmt_));
  }
}

Config Config::floating(int iterations, bool gain_compensated) {
  return Config(iterations, gain_compensated, std::nullopt);
}

Config Config::fixed_point(int iterations, const fx::Format& fmt, bool gain_compensated) {
  return Config(iterations, gain_compensated, fmt);
}

std::pair<double, double> Config::sincos(double theta) const {
  if (std::fabs(theta) > std::numbers::pi / 2 + 1e-12) {
    throw std::domain_error("cordic: sincos input outside +-pi/2");
  }
  return fmt_ ? sincos_fixed(theta) : sincos_floating(theta);
}

std::pair<double, double> Config::sincos_floating(double theta) const {
  double x = gain_compensated_ ? 1.0 / gain(iterations_) : 1.0;
  double y = 0.0;
  double acc = 0.0;
  for (int i = 0; i < iterations_; ++i) {
    int sigma = acc <= theta ? 1 : -1;  // ties rotate positive
    std::tie(x, y) = rotate_step(x, y, sigma, i);
    acc += sigma * angles_[i];
  }
  return {x, y};
}

std::pair<double, double> Config::sincos_fixed(double theta) const {
  const fx::Format& fmt = *fmt_;
  fx::Value x = fx::quantize(gain_compensated_ ? 1.0 / gain(iterations_) : 1.0, fmt);
  fx::Value y = fx::zero(fmt);
  fx::Value acc = fx::zero(fmt);
  fx::Value target = fx::quantize(theta, fmt);
  for (int i = 0; i < iterations_; ++i) {
    int sigma = fx::compare(acc, target) <= 0 ? 1 : -1;
    std::tie(x, y) = rotate_step(x, y, sigma, i);
    fx::Value step = sigma > 0 ? fx::add(acc, angles_fixed_[i]) : fx::sub(acc, angles_fixed_[i]);
    acc = fx::convert(step, fmt, fx::Rounding::nearest_even, fx::Overflow::saturate);
  }
  return {x.value(), y.value()};
}

Polar Config::cart2pol(double x, double y) const {
  if (x == 0.0 && y == 0.0) {
    throw std::domain_error("cordic: (0,0) has no angular coordinate");
  }
  // Pre-rotate into quadrant I or IV so vectoring converges; an exact
  // +-90 degree turn is a swap and a negation.
  double theta0;
  double px, py;
  if (y > 0.0 || (y == 0.0 && x < 0.0)) {
    theta0 = std::numbers::pi / 2;
    px = y;
    py = -x;
  } else if (y < 0.0) {
    theta0 = -std::numbers::pi / 2;
    px = -y;
    py = x;
  } else {  // y == 0, x > 0
    theta0 = 0.0;
    px = x;
    py = y;
  }
  return fmt_ ? vector_fixed(px, py, theta0) : vector_floating(px, py, theta0);
}

Polar Config::vector_floating(double x, double y, double theta0) const {
  double acc = theta0;
  for (int i = 0; i < iterations_; ++i) {
    int sigma = y < 0 ? 1 : -1;
    std::tie(x, y) = rotate_step(x, y, sigma, i);
    acc -= sigma * angles_[i];
  }
  Polar out;
  out.r = gain_compensated_ ? x / gain(iterations_) : x;
  out.theta = acc;
  return out;
}

Polar Config::vector_fixed(double x0, double y0, double theta0) const {
  const fx::Format& fmt = *fmt_;
  fx::Value x = fx::quantize(x0, fmt);
  fx::Value y = fx::quantize(y0, fmt);
  fx::Value acc = fx::quantize(theta0, fmt);
  for (int i = 0; i < iterations_; ++i) {
    int sigma = y.value_exact() < 0 ? 1 : -1;
    std::tie(x, y) = rotate_step(x, y, sigma, i);
    fx::Value step = sigma > 0 ? fx::sub(acc, angles_fixed_[i]) : fx::add(acc, angles_fixed_[i]);
    acc = fx::convert(step, fmt, fx::Rounding::nearest_even, fx::Overflow::saturate);
  }
  Polar out;
  double r = x.value();
  if (gain_compensated_) {
    fx::Value inv_gain = fx::quantize(1.0 / gain(iterations_), fmt);
    r = fx::convert(fx::mul(x, inv_gain), fmt, fx::Rounding::nearest_even,
                    fx::Overflow::saturate)
            .value();
  }
  out.r = r;
  out.theta = acc.value();
  return out;
}

}  // namespace cordic
}  // namespace sk
