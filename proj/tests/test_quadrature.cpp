#include "pshardy/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

#include "pshardy/exhaustion.hpp"
#include "pshardy/kernels.hpp"
#include "pshardy/types.hpp"

namespace {

using pshardy::Complex;
using pshardy::kPi;
using pshardy::kTwoPi;

// circle average of |1 - e^{i theta}|^{-s}: Gamma(1-s) / Gamma(1-s/2)^2
double fractional_mean_oracle(double s) {
  return std::exp(std::lgamma(1.0 - s) - 2.0 * std::lgamma(1.0 - 0.5 * s));
}

pshardy::Region disk_of_radius(double s) {
  pshardy::Region reg;
  reg.level = [s](Complex z) { return std::abs(z) - s; };
  reg.contains = [s](Complex z) { return std::abs(z) < s; };
  return reg;
}

}  // namespace

TEST_CASE("periodic rule reproduces trigonometric means exactly") {
  auto g = [](double t) { return 3.0 + std::cos(t) + 0.5 * std::sin(2 * t); };
  auto rep = pshardy::periodic_integrate(g);
  CHECK(rep.converged);
  CHECK(rep.value == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("periodic rule handles an integrable boundary singularity") {
  const double s = 0.75;
  auto g = [](double t) {
    const double d = std::abs(Complex(1.0, 0.0) - std::polar(1.0, t));
    return std::pow(d, -0.75);
  };
  pshardy::PeriodicOptions opt;
  opt.tol = 1e-8;
  opt.singular_angles = {0.0};
  auto rep = pshardy::periodic_integrate(g, opt);
  CHECK(rep.converged);
  CHECK(std::abs(rep.value - fractional_mean_oracle(s)) < 5e-8);
}

TEST_CASE("relative-tolerance wrapper scales with the integrand") {
  auto g = [](double t) { return 1e6 * (2.0 + std::cos(t)); };
  auto rep = pshardy::periodic_integrate_rel(g, 1e-10);
  CHECK(rep.converged);
  CHECK(rep.value == doctest::Approx(2e6).epsilon(1e-9));

  // near-zero integrals must still converge instead of chasing an
  // unsatisfiable absolute tolerance
  auto zero = [](double) { return 0.0; };
  auto zrep = pshardy::periodic_integrate_rel(zero, 1e-10);
  CHECK(zrep.converged);
  CHECK(std::abs(zrep.value) < 1e-13);
}

TEST_CASE("disk rule: unit disk area with an honest error estimate") {
  pshardy::DiskOptions opt;
  opt.tol = 1e-5;
  auto rep = pshardy::disk_integrate([](Complex) { return 1.0; },
                                     pshardy::whole_disk(), opt);
  CHECK(rep.converged);
  CHECK(rep.est_error <= opt.tol);
  CHECK(std::abs(rep.value - kPi) <= rep.est_error);
}

TEST_CASE("disk rule: sublevel disk of the quadratic exhaustion") {
  // (|z|^2 - 1)/2 < r is the disk of radius sqrt(1 + 2r)
  const double r = -0.125;
  auto u = pshardy::quad_only();
  auto region = pshardy::sublevel(
      [&u](Complex z) { return u.value(z); }, r);
  pshardy::DiskOptions opt;
  opt.tol = 1e-6;
  auto rep =
      pshardy::disk_integrate([](Complex) { return 1.0; }, region, opt);
  CHECK(rep.converged);
  CHECK(std::abs(rep.value - kPi * (1.0 + 2.0 * r)) <= rep.est_error);
}

TEST_CASE("disk rule: Poisson kernel area identity") {
  // (1/pi) int_{|z|<s} P(z, 1) dA = s^2
  const double s = 0.8;
  pshardy::DiskOptions opt;
  opt.tol = 1e-7;
  opt.singular_points = {Complex(1.0, 0.0)};
  auto rep = pshardy::disk_integrate(
      [](Complex z) { return pshardy::poisson_raw(z, 0.0); },
      disk_of_radius(s), opt);
  CHECK(rep.converged);
  CHECK(rep.value / kPi == doctest::Approx(s * s).epsilon(1e-6));
}

TEST_CASE("disk rule: estimate stays above the true error as tol shrinks") {
  for (double tol : {1e-3, 1e-4, 1e-5}) {
    pshardy::DiskOptions opt;
    opt.tol = tol;
    auto rep = pshardy::disk_integrate([](Complex) { return 1.0; },
                                       pshardy::whole_disk(), opt);
    CAPTURE(tol);
    CHECK(rep.converged);
    CHECK(std::abs(rep.value - kPi) <= rep.est_error);
  }
}

TEST_CASE("disk rule: exclusion disks remove bounded mass") {
  pshardy::DiskOptions opt;
  opt.tol = 1e-6;
  pshardy::ExclusionDisk excl;
  excl.center = Complex(0.0, 0.0);
  excl.radius = 1e-3;
  excl.mass_bound = 4e-6;  // caller's bound on what the hole can hide
  opt.exclusions = {excl};
  auto rep = pshardy::disk_integrate([](Complex) { return 1.0; },
                                     pshardy::whole_disk(), opt);
  CHECK(std::abs(rep.value - kPi) <= excl.mass_bound + 2.0 * opt.tol);
  CHECK(rep.est_error >= excl.mass_bound);
}

TEST_CASE("level-set tracing recovers circles of the quadratic exhaustion") {
  auto u = pshardy::quad_only();
  const double r = -0.18;
  const double radius = std::sqrt(1.0 + 2.0 * r);
  auto contours = pshardy::trace_levelset(u.field(), r);
  REQUIRE(contours.size() == 1);
  const auto& c = contours.front();
  CHECK(c.closed);
  REQUIRE(c.vertices.size() > 100);

  double max_residual = 0.0;
  double max_radius_err = 0.0;
  for (const Complex& v : c.vertices) {
    max_residual = std::max(max_residual, std::abs(u.value(v) - r));
    max_radius_err = std::max(max_radius_err, std::abs(std::abs(v) - radius));
  }
  CHECK(max_residual < 1e-9);
  CHECK(max_radius_err < 1e-9);

  // arc length via the unit density
  const double len =
      pshardy::contour_integrate(c, [](Complex) { return 1.0; });
  CHECK(len == doctest::Approx(kTwoPi * radius).epsilon(1e-4));

  auto fine = pshardy::refine_contour(u.field(), r, c);
  const double fine_len =
      pshardy::contour_integrate(fine, [](Complex) { return 1.0; });
  CHECK(fine_len == doctest::Approx(kTwoPi * radius).epsilon(1e-7));
}

TEST_CASE("level-set tracing of an atom potential stays on the level") {
  auto u = pshardy::single_atom(Complex(0.5, 0.0));
  const double r = -0.4;
  auto contours = pshardy::trace_levelset(u.field(), r);
  REQUIRE(contours.size() == 1);
  CHECK(contours.front().closed);
  double max_residual = 0.0;
  for (const Complex& v : contours.front().vertices)
    max_residual = std::max(max_residual, std::abs(u.value(v) - r));
  CHECK(max_residual < 1e-9);
}
