#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pshardy/analytic.hpp"
#include "pshardy/exhaustion.hpp"
#include "pshardy/quadrature.hpp"
#include "pshardy/table.hpp"
#include "pshardy/types.hpp"

namespace pshardy {

// Test integrand for the level-set measures. lap_density is the normalized
// Laplacian (classical Laplacian over 2 pi), so harmonic fields carry an
// identically zero density. singular_points are quadrature refinement hints
// where value or lap_density blows up or loses smoothness.
struct TestField {
  std::string name;
  std::function<double(Complex)> value;
  std::function<double(Complex)> lap_density;
  bool harmonic = false;
  std::vector<Complex> singular_points;
};

TestField field_one();
TestField field_re();
TestField field_im();
TestField field_abs2();        // |z|^2, density 1/pi * 2... see measures.cpp
TestField field_abs_1plus2();  // |1+z|^2
TestField field_exp_re();      // exp(Re z)
TestField field_abs_power(const AnalyticFunction& f, double p);  // |f|^p
// named lookup for config files; throws std::domain_error on unknown name
TestField field_by_name(const std::string& name);

enum class PairingRoute { lelong_jensen, contour };

struct LevelPairing {
  double r = 0.0;
  double value = 0.0;
  PairingRoute route = PairingRoute::lelong_jensen;
  QuadratureReport report;
};

// Pairing of the level measure at height r with phi, computed from the atom
// samples plus one merged area integral over the sublevel region.
LevelPairing mu_pair_lj(const Exhaustion& u, double r, const TestField& phi,
                        double tol = 1e-6);

// Same pairing computed as a line integral of phi |grad u| / 2pi over the
// traced level curve, refined until the value stabilizes.
LevelPairing mu_pair_contour(const Exhaustion& u, double r,
                             const std::function<double(Complex)>& phi,
                             double tol = 1e-6, int grid_n = 512);

// Total mass of the level measure; exactly 1 for purely atomic u.
LevelPairing mu_mass(const Exhaustion& u, double r, double tol = 1e-6);

// Rows (r_k, pairing, boundary limit, gap). Requires phi >= 0 with
// nonnegative lap_density, checked by sampling; violations throw.
ConvergenceTable monotonicity_table(const Exhaustion& u, const TestField& phi,
                                    const std::vector<double>& r_seq,
                                    double tol = 1e-6);

}  // namespace pshardy
