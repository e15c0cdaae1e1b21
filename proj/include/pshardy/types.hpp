#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace pshardy {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// -inf / +inf are carriers for "pole of a potential" and "boundary blow-up".
// They may be stored and compared but never fed into arithmetic that would
// produce NaN; consumers must check is_finite first or raise.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Point strictly inside the unit disk.
class DiskPoint {
 public:
  explicit DiskPoint(Complex z) : z_(z) {
    if (!is_finite(z) || std::abs(z) >= 1.0)
      throw std::domain_error("DiskPoint: |z| must be < 1");
  }
  DiskPoint(double x, double y) : DiskPoint(Complex(x, y)) {}

  Complex value() const { return z_; }
  double abs() const { return std::abs(z_); }

 private:
  Complex z_;
};

// Angle on the unit circle, normalized to [0, 2*pi).
class BoundaryAngle {
 public:
  explicit BoundaryAngle(double theta) {
    if (!std::isfinite(theta))
      throw std::domain_error("BoundaryAngle: non-finite angle");
    theta_ = std::fmod(theta, kTwoPi);
    if (theta_ < 0) theta_ += kTwoPi;
    if (theta_ >= kTwoPi) theta_ = 0.0;
  }

  double radians() const { return theta_; }
  Complex point() const { return Complex(std::cos(theta_), std::sin(theta_)); }

 private:
  double theta_;
};

// Exponent p > 0 of a Hardy space.
class HardyExponent {
 public:
  explicit HardyExponent(double p) : p_(p) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::domain_error("HardyExponent: p must be positive and finite");
  }
  double p() const { return p_; }

 private:
  double p_;
};

}  // namespace pshardy
