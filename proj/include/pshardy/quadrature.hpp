#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pshardy/types.hpp"

namespace pshardy {

struct QuadratureReport {
  double value = 0.0;
  double est_error = kPosInf;
  std::int64_t cells_or_nodes = 0;
  bool converged = false;
};

// ---- periodic quadrature on the circle (normalized measure dtheta / 2pi) ----

struct PeriodicOptions {
  double tol = 1e-8;                    // absolute, on the normalized value
  std::int64_t max_evals = 4'000'000;
  // Angles where the integrand is singular or sharply peaked. Panels are
  // split there and refined toward them; the integrand is never evaluated
  // at these exact angles.
  std::vector<double> singular_angles;
};

QuadratureReport periodic_integrate(const std::function<double(double)>& g,
                                    const PeriodicOptions& opt = {});

// Two-pass wrapper: converts a relative tolerance into an absolute one using
// a first rough pass.
QuadratureReport periodic_integrate_rel(const std::function<double(double)>& g,
                                        double rel_tol,
                                        const PeriodicOptions& base = {});

// ---- area quadrature over subregions of the disk ----

// A region is described by a level function negative inside, positive
// outside; contains() must agree with level() < 0. Regions are always
// implicitly intersected with the unit disk by the builders below.
struct Region {
  std::function<double(Complex)> level;
  std::function<bool(Complex)> contains;
};

Region whole_disk();
Region sublevel(const std::function<double(Complex)>& u, double r);    // {u < r}
Region superlevel(const std::function<double(Complex)>& u, double r);  // {u > r} (inside the disk)

// Disk of given radius around a singular point removed from the domain;
// the caller supplies an analytic bound for the removed mass, which is
// added to est_error.
struct ExclusionDisk {
  Complex center;
  double radius = 0.0;
  double mass_bound = 0.0;
};

struct DiskOptions {
  double tol = 1e-6;                    // absolute
  std::int64_t max_cells = 400'000;
  std::vector<Complex> singular_points; // pre-refinement hints
  std::vector<ExclusionDisk> exclusions;
};

// integral of F over region w.r.t. planar area dA (not normalized).
QuadratureReport disk_integrate(const std::function<double(Complex)>& F,
                                const Region& region,
                                const DiskOptions& opt = {});

// ---- level-set extraction and contour integration ----

// Scalar field with gradient, evaluable on |z| < safe_radius (which may
// exceed 1 when the defining formulas continue past the circle).
struct ScalarField {
  std::function<double(Complex)> value;
  std::function<Complex(Complex)> gradient;  // gradient as a complex number
  double safe_radius = 1.0;
};

struct PolylineContour {
  std::vector<Complex> vertices;
  bool closed = false;
};

struct LevelsetOptions {
  int grid_n = 512;
  double polish_tol = 1e-10;      // on |u - r|
  double min_gradient = 1e-6;     // regular-value guard
};

// Marching squares for {u = r}, cells outside the safe evaluation region
// masked, vertices polished onto the level set by Newton steps along the
// gradient. Throws std::runtime_error when r is not a regular value on the
// extracted curve (callers may retry with a nudged r).
std::vector<PolylineContour> trace_levelset(const ScalarField& u, double r,
                                            const LevelsetOptions& opt = {});

// Arc-length line integral, per-segment midpoint rule. Non-finite density
// values raise std::domain_error.
double contour_integrate(const PolylineContour& c,
                         const std::function<double(Complex)>& density);

// Doubles the vertex count by polishing chord midpoints onto {u = r}.
PolylineContour refine_contour(const PolylineContour& c, const ScalarField& u,
                               double r, const LevelsetOptions& opt = {});

// ---- shared helpers ----

// Newton polish of z onto {u = r}; returns nullopt if it fails to converge
// or the gradient degenerates.
std::optional<Complex> polish_onto_level(const ScalarField& u, double r,
                                         Complex z0, double tol,
                                         double min_gradient);

}  // namespace pshardy
