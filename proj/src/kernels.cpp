#include "pshardy/kernels.hpp"

#include <cmath>

namespace pshardy {

double poisson_raw(Complex z, double theta) {
  // |e^{i theta} - z|^2 = (1-rho)^2 + 4 rho sin^2((theta - psi)/2); no
  // cancellation as rho -> 1.
  const double rho = std::abs(z);
  const double psi = std::arg(z);
  const double s = std::sin(0.5 * (theta - psi));
  const double denom = (1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s;
  return (1.0 - rho) * (1.0 + rho) / denom;
}

double poisson(const DiskPoint& z, const BoundaryAngle& theta) {
  return poisson_raw(z.value(), theta.radians());
}

double green(const DiskPoint& z, const DiskPoint& w) {
  const Complex zv = z.value(), wv = w.value();
  if (zv == wv) return kNegInf;
  // Both factors are evaluated through std::abs, whose argument components
  // for (z,w) and (w,z) differ only by sign/conjugation, so the two orders
  // produce bitwise-identical results.
  const double num = std::abs(zv - wv);
  const double den = std::abs(1.0 - std::conj(wv) * zv);
  return std::log(num) - std::log(den);
}

Complex green_gradient(Complex z, Complex w) {
  // grad of Re log(z-w) - Re log(1 - conj(w) z) = conj(d/dz of the logs)
  return std::conj(1.0 / (z - w) + std::conj(w) / (1.0 - std::conj(w) * z));
}

QuadratureReport harmonic_extension(const std::function<double(double)>& g,
                                    const DiskPoint& z, double tol,
                                    const std::vector<double>& singular_angles) {
  const Complex zv = z.value();
  PeriodicOptions opt;
  opt.tol = tol;
  opt.singular_angles = singular_angles;
  // A spike of width 1-|z| needs graded panels once it is narrow; treat the
  // kernel peak as a refinement center when the integrand is already panelized.
  if (!singular_angles.empty() || z.abs() > 0.999) {
    opt.singular_angles.push_back(std::arg(zv));
  }
  return periodic_integrate(
      [&](double th) { return g(th) * poisson_raw(zv, th); }, opt);
}

double poisson_convolve(double t, double s_angle, const DiskPoint& z,
                        double tol) {
  if (!(t > 0.0 && t < 1.0))
    throw std::domain_error("poisson_convolve: t must lie in (0,1)");
  const Complex w = t * Complex(std::cos(s_angle), std::sin(s_angle));
  const Complex zv = z.value();
  PeriodicOptions opt;
  opt.tol = tol;
  QuadratureReport rep = periodic_integrate(
      [&](double th) { return poisson_raw(w, th) * poisson_raw(zv, th); }, opt);
  return rep.value;
}

}  // namespace pshardy
