#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pshardy/quadrature.hpp"
#include "pshardy/types.hpp"

namespace pshardy {

struct GreenAtom {
  Complex pole;    // |pole| < 1
  double weight;   // > 0
};

// u(z) = sum_j c_j G(z, a_j) + c_q (|z|^2 - 1)/2 with sum c_j + c_q = 1.
// The normalized Laplacian is sum_j c_j delta_{a_j} + c_q (1/pi) dA, total
// mass 1. Formulas continue smoothly past the unit circle up to the
// reflected poles 1/conj(a_j); safe_radius() reports how far.
class Exhaustion {
 public:
  Exhaustion(std::vector<GreenAtom> atoms, double quad_weight);

  const std::vector<GreenAtom>& atoms() const { return atoms_; }
  double quad_weight() const { return quad_weight_; }

  // -inf exactly at the poles
  double value(Complex z) const;
  double eval(const DiskPoint& z) const { return value(z.value()); }
  Complex gradient(Complex z) const;

  ScalarField field() const;
  double safe_radius() const;

  // plain-text record: one "atom re im weight" line per atom + "quad w"
  std::string to_record() const;
  static Exhaustion parse_record(const std::string& text);

 private:
  std::vector<GreenAtom> atoms_;
  double quad_weight_;
};

// convenience constructors used across tests and experiments
Exhaustion single_atom(Complex pole, double weight = 1.0);
Exhaustion quad_only();
Exhaustion atom_plus_quad(Complex pole, double atom_weight, double quad_weight);

// Boundary density alpha_u(theta) = sum c_j P(a_j, e^{i theta}) + c_q.
struct BoundaryDensity {
  std::function<double(double)> density;
  double l1_mass = 0.0;       // integral against normalized lambda
  double lower_bound = 0.0;   // sampled min over >= 4096 angles
  QuadratureReport mass_report;
};

BoundaryDensity alpha(const Exhaustion& u, double tol = 1e-10);

// analytic lower bound c_q + sum c_j (1-|a_j|)/(1+|a_j|)
double alpha_lower_bound(const Exhaustion& u);

// Partial Poisson mass p_r(theta): the Poisson integral of the Laplacian
// restricted to B_{u,r}. Atoms lie in every sublevel set; the quadratic part
// integrates over {u < r} by area quadrature.
QuadratureReport partial_poisson_mass(const Exhaustion& u, double r,
                                      const BoundaryAngle& theta,
                                      double tol = 1e-8);

// int g dmu_u = int g(theta) alpha_u(theta) dlambda(theta)
QuadratureReport boundary_pair(const Exhaustion& u,
                               const std::function<double(double)>& g,
                               double tol = 1e-8,
                               const std::vector<double>& singular_angles = {});

// Truncation schedule K -> Exhaustion with K atoms, weights renormalized to
// total mass 1.
struct TruncationSchedule {
  std::function<GreenAtom(int)> term;  // k = 1, 2, ...
  Exhaustion truncate(int K) const;
};

// atoms (1 - pole_ratio^k, weight_ratio^k) on the positive axis
TruncationSchedule geometric_schedule(double pole_ratio, double weight_ratio);

}  // namespace pshardy
