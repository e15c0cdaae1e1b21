#include "pshardy/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "pshardy/types.hpp"

namespace {

using pshardy::BoundaryAngle;
using pshardy::Complex;
using pshardy::DiskPoint;

Complex random_disk_point(std::mt19937& rng, double max_abs = 0.97) {
  std::uniform_real_distribution<double> radial(0.0, max_abs);
  std::uniform_real_distribution<double> angular(0.0, pshardy::kTwoPi);
  return std::polar(radial(rng), angular(rng));
}

}  // namespace

TEST_CASE("Poisson kernel closed-form anchors") {
  // P(x, 1) = (1+x)/(1-x) on the real axis
  CHECK(pshardy::poisson(DiskPoint(0.5, 0.0), BoundaryAngle(0.0)) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(pshardy::poisson(DiskPoint(0.9, 0.0), BoundaryAngle(0.0)) ==
        doctest::Approx(19.0).epsilon(1e-14));
  CHECK(pshardy::poisson(DiskPoint(0.0, 0.0), BoundaryAngle(2.1)) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Poisson kernel: stable and raw forms agree near the boundary") {
  const Complex z = std::polar(1.0 - 1e-9, 0.7);
  for (double theta : {0.0, 0.7, 0.7 + 1e-6, 3.0}) {
    const double a = pshardy::poisson(DiskPoint(z), BoundaryAngle(theta));
    const double b = pshardy::poisson_raw(z, theta);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("Poisson kernel has unit mass at many disk points") {
  std::mt19937 rng(12345);
  auto one = [](double) { return 1.0; };
  for (int i = 0; i < 50; ++i) {
    const DiskPoint z(random_disk_point(rng));
    auto rep = pshardy::harmonic_extension(one, z, 1e-12);
    CAPTURE(z.value());
    CHECK(rep.converged);
    CHECK(std::abs(rep.value - 1.0) < 1e-10);
  }
}

TEST_CASE("harmonic extension reproduces harmonic polynomials") {
  auto g = [](double t) { return std::cos(t); };  // boundary values of Re z
  for (Complex z : {Complex(0.3, 0.4), Complex(-0.7, 0.1), Complex(0.0, 0.9)}) {
    auto rep = pshardy::harmonic_extension(g, DiskPoint(z), 1e-12);
    CHECK(rep.converged);
    CHECK(rep.value == doctest::Approx(z.real()).epsilon(1e-10));
  }
}

TEST_CASE("Green function is symmetric bit for bit") {
  std::mt19937 rng(991);
  for (int i = 0; i < 20; ++i) {
    const DiskPoint a(random_disk_point(rng));
    const DiskPoint b(random_disk_point(rng));
    const double gab = pshardy::green(a, b);
    const double gba = pshardy::green(b, a);
    CAPTURE(a.value());
    CAPTURE(b.value());
    CHECK(gab == gba);  // exact equality is the contract
    CHECK(gab < 0.0);
  }
}

TEST_CASE("Green function hits the -inf sentinel exactly at the pole") {
  const DiskPoint w(0.3, -0.2);
  CHECK(pshardy::green(w, w) == pshardy::kNegInf);
}

TEST_CASE("Green gradient matches finite differences") {
  const Complex w(0.4, 0.1);
  const double h = 1e-6;
  for (Complex z : {Complex(0.1, -0.5), Complex(-0.6, 0.2), Complex(0.7, 0.4)}) {
    const Complex g = pshardy::green_gradient(z, w);
    const double gx = (pshardy::green(DiskPoint(z + Complex(h, 0)), DiskPoint(w)) -
                       pshardy::green(DiskPoint(z - Complex(h, 0)), DiskPoint(w))) /
                      (2 * h);
    const double gy = (pshardy::green(DiskPoint(z + Complex(0, h)), DiskPoint(w)) -
                       pshardy::green(DiskPoint(z - Complex(0, h)), DiskPoint(w))) /
                      (2 * h);
    CHECK(g.real() == doctest::Approx(gx).epsilon(1e-5));
    CHECK(g.imag() == doctest::Approx(gy).epsilon(1e-5));
  }
}

TEST_CASE("Green boundary quotient recovers the Poisson kernel") {
  // G(s e^{i theta}, w) / (s - 1) -> +P(w, e^{i theta}) as s -> 1
  const Complex w(0.5, 0.0);
  auto quotient = [&](double s, double theta) {
    return pshardy::green(DiskPoint(std::polar(s, theta)), DiskPoint(w)) /
           (s - 1.0);
  };
  for (double theta : {0.0, 1.2, pshardy::kPi}) {
    const double q1 = quotient(1.0 - 1e-4, theta);
    const double q2 = quotient(1.0 - 2e-4, theta);
    const double extrapolated = 2.0 * q1 - q2;  // kills the O(s-1) term
    const double target = pshardy::poisson(DiskPoint(w), BoundaryAngle(theta));
    CHECK(extrapolated == doctest::Approx(target).epsilon(1e-6));
  }
}

TEST_CASE("Poisson convolution satisfies the semigroup identity") {
  // int P(t e^{i s}, .) P(z, .) dlambda = P(t z, e^{i s})
  struct Case {
    double t;
    double s;
    Complex z;
  };
  for (const Case& c : {Case{0.7, 0.4, Complex(0.5, 0.3)},
                        Case{0.3, 2.8, Complex(-0.6, 0.1)},
                        Case{0.9, 0.0, Complex(0.2, -0.7)},
                        Case{0.5, 5.1, Complex(0.0, 0.0)}}) {
    const double conv =
        pshardy::poisson_convolve(c.t, c.s, DiskPoint(c.z), 1e-12);
    const double direct = pshardy::poisson_raw(c.t * c.z, c.s);
    CAPTURE(c.t);
    CAPTURE(c.z);
    CHECK(std::abs(conv - direct) < 1e-8);
  }
}
