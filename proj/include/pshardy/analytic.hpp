#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pshardy/types.hpp"

namespace pshardy {

// One factor (1 - c z)^{-gamma} with gamma > 0 and |c| <= 1. A factor whose
// |c| is 1 (within 1e-12) blows up at the boundary point conj(c).
struct PowerFactor {
  Complex c;
  double gamma;
};

// f(z) = poly(z) * prod_k (1 - c_k z)^{-gamma_k}. Each factor takes the
// principal branch, fixed by value 1 at z = 0; since 1 - c z stays in the
// closed right half-plane on |z| <= 1, the branch is single-valued there.
class AnalyticFunction {
 public:
  AnalyticFunction(std::vector<Complex> poly, std::vector<PowerFactor> factors);

  static AnalyticFunction polynomial(std::vector<Complex> coeffs);
  static AnalyticFunction constant(Complex value);
  static AnalyticFunction power_factor(Complex c, double gamma);

  const std::vector<Complex>& poly() const { return poly_; }
  const std::vector<PowerFactor>& factors() const { return factors_; }
  int degree() const { return int(poly_.size()) - 1; }

  Complex eval(Complex z) const;
  Complex deriv(Complex z) const;
  std::pair<Complex, Complex> eval_pair(Complex z) const;  // (f, f')

  // Value at e^{i theta}. At a singular angle the +inf sentinel is returned
  // as the real part; it participates in membership logic, not arithmetic.
  Complex boundary_trace(double theta) const;

  // Angles where a |c| = 1 factor diverges.
  std::vector<double> singular_angles() const;
  // Angles of boundary zeros of the poly part (|f*|^p kinks there).
  std::vector<double> boundary_zero_angles() const;
  // Union of the two: every angle that needs graded quadrature.
  std::vector<double> quadrature_angles() const;

  // Classical integrability of |f*|^p: sum of gamma over the factors at each
  // singular angle, times p, must stay below 1.
  bool trace_power_integrable(double p) const;

  AnalyticFunction dilate(double t) const;  // z -> f(tz), 0 < t < 1

  std::vector<Complex> taylor(int n) const;  // coefficients a_0..a_n
  AnalyticFunction taylor_section(int n) const;

  // Zeros of the poly part with |z| < 1; the factors never vanish on the
  // disk. Used as quadrature hints when p < 2.
  std::vector<Complex> interior_zeros() const;

  std::string to_record() const;
  static AnalyticFunction parse_record(const std::string& text);

 private:
  std::vector<Complex> poly_;
  std::vector<PowerFactor> factors_;
};

// Density of the normalized Laplacian of |f|^p with respect to planar area:
// (p^2 / 2pi) |f|^{p-2} |f'|^2. Throws when p < 2 exactly at a zero of f.
double lap_density_fp(const AnalyticFunction& f, const HardyExponent& p,
                      Complex z);

// Same density packaged for quadrature: at a zero with p < 2 it reports +inf
// instead of throwing, so adaptive subdivision can react.
std::function<double(Complex)> lap_density_field(const AnalyticFunction& f,
                                                 double p);

}  // namespace pshardy
