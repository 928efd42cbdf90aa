#ifndef STREAMKIT_CORDIC_HPP
#define STREAMKIT_CORDIC_HPP

#include <optional>
#include <utility>
#include <vector>

#include "streamkit/fixed.hpp"

namespace sk {
namespace cordic {

struct Polar {
  double r = 0;      // magnitude, >= 0
  double theta = 0;  // radians in (-pi, pi]
};

// Cumulative scale picked up by n shift-add rotations:
// prod_{i<n} sqrt(1 + 2^-2i). Approaches 1.64676025812107.
double gain(int n);

// One shift-add rotation: x' = x - sigma*(y >> i), y' = y + sigma*(x >> i).
std::pair<double, double> rotate_step(double x, double y, int sigma, int i);
std::pair<fixed::Value, fixed::Value> rotate_step(const fixed::Value& x,
                                                  const fixed::Value& y, int sigma,
                                                  int i);

// Iteration count, angle lookup table, and numeric mode for one CORDIC
// instance. The table holds arctan(2^-i) in the mode's own precision.
// Immutable once built.
class Config {
 public:
  static Config floating(int iterations, bool gain_compensated = true);
  static Config fixed_point(int iterations, const fixed::Format& fmt,
                            bool gain_compensated = true);

  int iterations() const { return iterations_; }
  bool gain_compensated() const { return gain_compensated_; }
  bool is_fixed() const { return fmt_.has_value(); }
  const fixed::Format& format() const { return *fmt_; }
  const std::vector<double>& angle_table() const { return angles_; }

  // (cos, sin) of theta, |theta| <= pi/2. Starts from (1/gain, 0) when
  // compensated and accumulates +-arctan(2^-i) toward theta, positive
  // rotation on ties.
  std::pair<double, double> sincos(double theta) const;

  // Cartesian to polar by driving y to zero, after a +-90 degree
  // pre-rotation into the right half plane. (0,0) has no angle and is
  // rejected.
  Polar cart2pol(double x, double y) const;

 private:
  Config(int iterations, bool gain_compensated, std::optional<fixed::Format> fmt);

  std::pair<double, double> sincos_floating(double theta) const;
  std::pair<double, double> sincos_fixed(double theta) const;
  Polar vector_floating(double x, double y, double theta0) const;
  Polar vector_fixed(double x, double y, double theta0) const;

  int iterations_;
  bool gain_compensated_;
  std::optional<fixed::Format> fmt_;
  std::vector<double> angles_;
  std::vector<fixed::Value> angles_fixed_;
};

}  // namespace cordic
}  // namespace sk

#endif
