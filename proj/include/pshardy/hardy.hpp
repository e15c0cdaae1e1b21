#pragma once

#include <utility>
#include <vector>

#include "pshardy/analytic.hpp"
#include "pshardy/exhaustion.hpp"
#include "pshardy/measures.hpp"
#include "pshardy/table.hpp"
#include "pshardy/types.hpp"

namespace pshardy {

enum class NormRoute { boundary, riesz, levels };

struct NormResult {
  double p = 2.0;
  NormRoute route = NormRoute::boundary;
  double value = 0.0;        // the norm itself
  double power_value = 0.0;  // its p-th power, the quantity integrated
  bool finite = true;
  QuadratureReport report;
  // levels route only: (r_k, mu_{u,r_k}(|f|^p)) rows and the extrapolated
  // limit mapped through the p-th root
  std::vector<std::pair<double, double>> rows;
  std::vector<QuadratureReport> row_reports;
  double extrapolated = 0.0;
};

// ||f|| from the boundary density: (int |f*|^p alpha_u dlambda)^(1/p).
NormResult norm_boundary(const AnalyticFunction& f, const HardyExponent& p,
                         const Exhaustion& u, double tol = 1e-8);

// Norm of the pointwise boundary difference |fa* - fb*| (used for dilation
// gaps and Taylor section errors; the difference of traces is integrated
// directly, no subtraction of norms).
NormResult norm_boundary_diff(const AnalyticFunction& fa,
                              const AnalyticFunction& fb,
                              const HardyExponent& p, const Exhaustion& u,
                              double tol = 1e-8);

// ||f|| from the atom samples plus one area integral of
// c_q |f|^p / pi - u * lap(|f|^p). Requires f analytic across the closed
// disk (no unit-circle factor singularities).
NormResult norm_riesz(const AnalyticFunction& f, const HardyExponent& p,
                      const Exhaustion& u, double tol = 1e-6);

// default level heights -2^-k, k = 1..9, then -1e-3
std::vector<double> default_levels();

// ||f|| as the increasing limit of level pairings mu_{u,r}(|f|^p) along
// r_seq, with one Richardson step on the last two rows (clamped from below
// by the last row, since the rows increase to the limit).
NormResult norm_levels(const AnalyticFunction& f, const HardyExponent& p,
                       const Exhaustion& u,
                       const std::vector<double>& r_seq = default_levels(),
                       double tol = 1e-6);

enum class Membership { yes, no, inconclusive };

struct MembershipResult {
  Membership verdict = Membership::inconclusive;
  NormResult norm;               // from the last budget attempt
  std::vector<double> attempts;  // successive integral values per budget
};

// Decides f in H^p_u by integrating |f*|^p alpha under escalating node
// budgets: stabilization means yes, sustained growth means no, anything
// else is inconclusive.
MembershipResult membership(const AnalyticFunction& f, const HardyExponent& p,
                            const Exhaustion& u, double tol = 1e-8);

// rows (t, ||f_t||, ||f||, ||f_t - f||); f_t(z) = f(tz)
ConvergenceTable dilation_study(const AnalyticFunction& f,
                                const HardyExponent& p, const Exhaustion& u,
                                const std::vector<double>& t_seq,
                                double tol = 1e-8);

// rows (t, ||f||^p under the single-atom exhaustion at t, |f*(1)|^p, gap);
// flags the first t whose row exceeds 1
ConvergenceTable canonical_ball_study(const AnalyticFunction& f,
                                      const HardyExponent& p,
                                      const std::vector<double>& t_seq,
                                      double tol = 1e-10);

// rows (r_k, <mu_{u,r_k}, phi * Re f>, boundary pairing, gap) via the
// contour route; h = Re f must lie in h^p_u with p > 1
ConvergenceTable weakstar_study(const Exhaustion& u, const AnalyticFunction& f,
                                const TestField& phi, const HardyExponent& p,
                                const std::vector<double>& r_seq,
                                double tol = 1e-8, int grid_n = 512);

// rows (j, ||T_n(f_t) - f_t||, 0, same) with t = 1 - 2^-j, n = 2^j
ConvergenceTable density_study(const AnalyticFunction& f,
                               const HardyExponent& p, const Exhaustion& u,
                               const std::vector<int>& j_seq,
                               double tol = 1e-8);

// rows (K, ||f||^p under truncate(K), same at K-1, |ratio - sqrt 2|); the
// summary also reports the classical norm of f, which stays finite while
// the truncated norms grow without bound
ConvergenceTable strict_inclusion_study(const AnalyticFunction& f,
                                        const HardyExponent& p,
                                        const TruncationSchedule& schedule,
                                        const std::vector<int>& K_seq,
                                        double tol = 1e-6);

// checks v <= u on a sample grid (throws on violation), then emits one row
// comparing the two norms; v <= u forces ||f||_u <= ||f||_v
ConvergenceTable comparison_study(const AnalyticFunction& f,
                                  const HardyExponent& p, const Exhaustion& u,
                                  const Exhaustion& v, double tol = 1e-8);

}  // namespace pshardy
