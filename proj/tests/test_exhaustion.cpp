#include "pshardy/exhaustion.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pshardy/kernels.hpp"
#include "pshardy/types.hpp"

namespace {

using pshardy::BoundaryAngle;
using pshardy::Complex;
using pshardy::DiskPoint;

}  // namespace

TEST_CASE("exhaustion values: classical, quadratic, and mixed anchors") {
  auto log_abs = pshardy::single_atom(Complex(0.0, 0.0));
  CHECK(log_abs.value(Complex(0.5, 0.0)) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(log_abs.value(Complex(0.0, 0.0)) == pshardy::kNegInf);

  auto quad = pshardy::quad_only();
  CHECK(quad.value(Complex(0.6, 0.0)) ==
        doctest::Approx((0.36 - 1.0) / 2.0).epsilon(1e-15));

  auto mixed = pshardy::atom_plus_quad(Complex(0.5, 0.0), 0.5, 0.5);
  const Complex z(0.2, -0.3);
  const double expected =
      0.5 * pshardy::green(DiskPoint(z), DiskPoint(0.5, 0.0)) +
      0.5 * (std::norm(z) - 1.0) / 2.0;
  CHECK(mixed.value(z) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(mixed.value(Complex(0.5, 0.0)) == pshardy::kNegInf);
  CHECK(mixed.value(Complex(0.9, 0.0)) < 0.0);
}

TEST_CASE("exhaustion constructor enforces the normalized-mass contract") {
  using pshardy::Exhaustion;
  using pshardy::GreenAtom;
  CHECK_THROWS_AS(Exhaustion({GreenAtom{Complex(0, 0), 0.5}}, 0.4),
                  std::domain_error);
  CHECK_THROWS_AS(Exhaustion({GreenAtom{Complex(0, 0), -0.5}}, 1.5),
                  std::domain_error);
  CHECK_THROWS_AS(Exhaustion({GreenAtom{Complex(1.0, 0), 1.0}}, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(Exhaustion({GreenAtom{Complex(0.3, 0), 0.5},
                              GreenAtom{Complex(0.3, 0), 0.5}},
                             0.0),
                  std::domain_error);
  CHECK_THROWS_AS(Exhaustion({}, 0.0), std::domain_error);
  CHECK_NOTHROW(Exhaustion({GreenAtom{Complex(0.3, 0), 0.5}}, 0.5));
}

TEST_CASE("exhaustion gradient matches finite differences") {
  auto u = pshardy::atom_plus_quad(Complex(0.4, 0.2), 0.7, 0.3);
  const double h = 1e-6;
  for (Complex z : {Complex(0.1, -0.5), Complex(-0.6, 0.3), Complex(0.8, 0.0)}) {
    const Complex g = u.gradient(z);
    const double gx = (u.value(z + Complex(h, 0)) - u.value(z - Complex(h, 0))) /
                      (2 * h);
    const double gy = (u.value(z + Complex(0, h)) - u.value(z - Complex(0, h))) /
                      (2 * h);
    CHECK(g.real() == doctest::Approx(gx).epsilon(1e-5));
    CHECK(g.imag() == doctest::Approx(gy).epsilon(1e-5));
  }
}

TEST_CASE("boundary density: atom anchors, unit mass, and the lower bound") {
  auto u = pshardy::single_atom(Complex(0.9, 0.0));
  auto a = pshardy::alpha(u);

  // alpha(theta) = P(0.9, e^{i theta}); at theta = 0 that is 19
  CHECK(a.density(0.0) == doctest::Approx(19.0).epsilon(1e-12));
  CHECK(a.mass_report.converged);
  CHECK(std::abs(a.l1_mass - 1.0) < 1e-9);

  const double bound = pshardy::alpha_lower_bound(u);
  CHECK(bound == doctest::Approx(0.1 / 1.9).epsilon(1e-14));
  CHECK(a.lower_bound >= bound - 1e-12);

  auto quad = pshardy::alpha(pshardy::quad_only());
  for (double t : {0.0, 1.0, 2.5, 6.0})
    CHECK(quad.density(t) == doctest::Approx(1.0).epsilon(1e-14));

  auto mixed =
      pshardy::atom_plus_quad(Complex(0.5, 0.0), 0.5, 0.5);
  auto am = pshardy::alpha(mixed);
  const double at_zero =
      0.5 * pshardy::poisson(DiskPoint(0.5, 0.0), BoundaryAngle(0.0)) + 0.5;
  CHECK(am.density(0.0) == doctest::Approx(at_zero).epsilon(1e-12));
}

TEST_CASE("partial Poisson mass: exact values and monotone growth") {
  // quadratic part: mass over {u < r} is 1 + 2r, independent of the angle
  auto quad = pshardy::quad_only();
  auto rep = pshardy::partial_poisson_mass(quad, -0.18, BoundaryAngle(0.7));
  CHECK(rep.converged);
  CHECK(rep.value == doctest::Approx(0.64).epsilon(1e-6));

  // atoms lie inside every sublevel set, so the atom part is already full
  auto atom = pshardy::single_atom(Complex(0.5, 0.0));
  auto arep = pshardy::partial_poisson_mass(atom, -2.0, BoundaryAngle(0.0));
  CHECK(arep.value == doctest::Approx(3.0).epsilon(1e-10));

  // mixed: increasing in r and bounded by the boundary density
  auto mixed = pshardy::atom_plus_quad(Complex(0.5, 0.0), 0.5, 0.5);
  auto density = pshardy::alpha(mixed);
  for (double theta : {0.0, 1.5, 3.1}) {
    double prev = 0.0;
    for (double r : {-0.5, -0.25, -0.1, -0.02}) {
      auto m = pshardy::partial_poisson_mass(mixed, r, BoundaryAngle(theta));
      CHECK(m.value >= prev - 1e-8);
      CHECK(m.value <= density.density(theta) + 1e-8);
      prev = m.value;
    }
  }

  CHECK_THROWS_AS(pshardy::partial_poisson_mass(quad, 0.5, BoundaryAngle(0.0)),
                  std::domain_error);
}

TEST_CASE("boundary pairing against the density is a Poisson extension") {
  auto u = pshardy::single_atom(Complex(0.5, 0.0));
  auto g = [](double t) { return 2.0 + 2.0 * std::cos(t); };  // |1 + w|^2
  auto rep = pshardy::boundary_pair(u, g);
  CHECK(rep.converged);
  CHECK(rep.value == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("exhaustion records round-trip and reject malformed text") {
  auto mixed = pshardy::atom_plus_quad(Complex(0.4, -0.3), 0.25, 0.75);
  auto back = pshardy::Exhaustion::parse_record(mixed.to_record());
  REQUIRE(back.atoms().size() == 1);
  CHECK(back.atoms()[0].pole == mixed.atoms()[0].pole);
  CHECK(back.atoms()[0].weight == mixed.atoms()[0].weight);
  CHECK(back.quad_weight() == mixed.quad_weight());

  CHECK_THROWS_AS(pshardy::Exhaustion::parse_record(""), std::domain_error);
  CHECK_THROWS_AS(pshardy::Exhaustion::parse_record("atom 0.1"),
                  std::domain_error);
  CHECK_THROWS_AS(pshardy::Exhaustion::parse_record("orbit 1 2 3"),
                  std::domain_error);
}

TEST_CASE("geometric truncation schedule renormalizes to unit mass") {
  auto sched = pshardy::geometric_schedule(0.25, 0.5);
  CHECK(sched.term(1).pole == Complex(0.75, 0.0));
  CHECK(sched.term(2).pole == Complex(0.9375, 0.0));
  CHECK(sched.term(1).weight == doctest::Approx(0.5));
  CHECK(sched.term(2).weight == doctest::Approx(0.25));

  auto u3 = sched.truncate(3);
  CHECK(u3.quad_weight() == 0.0);
  REQUIRE(u3.atoms().size() == 3);
  double total = 0.0;
  for (const auto& a : u3.atoms()) total += a.weight;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  // renormalized from 0.5, 0.25, 0.125
  CHECK(u3.atoms()[0].weight == doctest::Approx(0.5 / 0.875));

  CHECK_THROWS_AS(pshardy::geometric_schedule(1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(sched.truncate(0), std::domain_error);
}

TEST_CASE("safe analytic-continuation radius") {
  CHECK(pshardy::single_atom(Complex(0.5, 0.0)).safe_radius() ==
        doctest::Approx(1.15));
  CHECK(pshardy::single_atom(Complex(0.9, 0.0)).safe_radius() ==
        doctest::Approx((1.0 + 1.0 / 0.9) / 2.0));
  CHECK(pshardy::quad_only().safe_radius() == doctest::Approx(1.15));
}
