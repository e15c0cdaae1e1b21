#include "pshardy/hardy.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "pshardy/analytic.hpp"
#include "pshardy/exhaustion.hpp"
#include "pshardy/types.hpp"

namespace {

using pshardy::AnalyticFunction;
using pshardy::Complex;
using pshardy::HardyExponent;

std::string note_of(const pshardy::ConvergenceTable& t,
                    const std::string& key) {
  for (const auto& [k, v] : t.summary)
    if (k == key) return v;
  return "";
}

AnalyticFunction one_plus_z() {
  return AnalyticFunction::polynomial({Complex(1, 0), Complex(1, 0)});
}

// classical H^1 norm of (1-z)^{-3/4}: Gamma(1/4) / Gamma(5/8)^2
double fractional_h1_oracle() {
  return std::exp(std::lgamma(0.25) - 2.0 * std::lgamma(0.625));
}

}  // namespace

TEST_CASE("boundary norms: weighted and classical anchors") {
  auto f = one_plus_z();
  const HardyExponent two(2.0);

  auto classical = pshardy::norm_boundary(f, two, pshardy::single_atom(0.0));
  CHECK(classical.finite);
  CHECK(classical.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  auto weighted =
      pshardy::norm_boundary(f, two, pshardy::single_atom(Complex(0.5, 0.0)));
  CHECK(weighted.value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));

  // constants have norm |c| in every space, any exponent
  auto c = AnalyticFunction::constant(Complex(-2.5, 0.0));
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    auto n = pshardy::norm_boundary(
        c, HardyExponent(p), pshardy::atom_plus_quad(Complex(0.3, 0.4), 0.5, 0.5));
    CHECK(n.value == doctest::Approx(2.5).epsilon(1e-10));
  }

  // monomials are unit vectors classically
  auto z3 = AnalyticFunction::polynomial(
      {Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)});
  auto n3 = pshardy::norm_boundary(z3, HardyExponent(4.0),
                                   pshardy::single_atom(0.0));
  CHECK(n3.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("boundary difference norm integrates the pointwise gap") {
  auto fa = one_plus_z();
  auto fb = AnalyticFunction::constant(Complex(1, 0));
  // fa - fb = z, classical H^2 norm 1
  auto d = pshardy::norm_boundary_diff(fa, fb, HardyExponent(2.0),
                                       pshardy::single_atom(0.0));
  CHECK(d.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("area route agrees with the boundary route") {
  auto f = one_plus_z();
  auto u = pshardy::single_atom(Complex(0.5, 0.0));
  auto riesz = pshardy::norm_riesz(f, HardyExponent(2.0), u);
  CHECK(riesz.report.converged);
  CHECK(std::abs(riesz.value - std::sqrt(3.0)) / std::sqrt(3.0) < 1e-4);

  // f singular on the circle cannot use the area route
  auto sing = AnalyticFunction::power_factor(Complex(1.0, 0.0), 0.75);
  CHECK_THROWS_AS(pshardy::norm_riesz(sing, HardyExponent(1.0), u),
                  std::domain_error);
}

TEST_CASE("levels route increases to the boundary norm") {
  auto f = one_plus_z();
  auto u = pshardy::single_atom(Complex(0.5, 0.0));
  auto lv = pshardy::norm_levels(f, HardyExponent(2.0), u);
  REQUIRE(lv.rows.size() == pshardy::default_levels().size());
  for (std::size_t i = 1; i < lv.rows.size(); ++i)
    CHECK(lv.rows[i].second >= lv.rows[i - 1].second - 1e-9);
  CHECK(lv.extrapolated >= lv.value);
  CHECK(std::abs(lv.extrapolated - std::sqrt(3.0)) / std::sqrt(3.0) < 1e-3);
}

TEST_CASE("membership verdicts follow classical integrability") {
  auto f = AnalyticFunction::power_factor(Complex(1.0, 0.0), 0.75);
  auto u = pshardy::single_atom(0.0);

  auto in = pshardy::membership(f, HardyExponent(1.0), u);
  CHECK(in.verdict == pshardy::Membership::yes);
  CHECK(in.norm.value ==
        doctest::Approx(fractional_h1_oracle()).epsilon(1e-6));

  auto out = pshardy::membership(f, HardyExponent(2.0), u);
  CHECK(out.verdict == pshardy::Membership::no);
  REQUIRE(out.attempts.size() >= 2);
  CHECK(out.attempts.back() > out.attempts.front());

  // log-divergent borderline: must not claim membership
  auto edge = AnalyticFunction::power_factor(Complex(1.0, 0.0), 0.5);
  auto verdict = pshardy::membership(edge, HardyExponent(2.0), u);
  CHECK(verdict.verdict != pshardy::Membership::yes);
}

TEST_CASE("dilation study matches the weighted closed forms") {
  // f = 1 + z under the atom at 1/2: ||f_t||^2 = 1 + t + t^2 and
  // ||f_t - f|| = (1 - t) ||z|| = 1 - t
  auto f = one_plus_z();
  auto u = pshardy::single_atom(Complex(0.5, 0.0));
  auto table = pshardy::dilation_study(f, HardyExponent(2.0), u,
                                       {0.5, 0.75, 0.9});
  REQUIRE(table.rows.size() == 3);
  for (const auto& row : table.rows) {
    const double t = row.parameter;
    CHECK(row.value ==
          doctest::Approx(std::sqrt(1.0 + t + t * t)).epsilon(1e-6));
    CHECK(row.reference == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
    CHECK(row.abs_error == doctest::Approx(1.0 - t).epsilon(1e-6));
  }
  CHECK(note_of(table, "norm_monotone") == "1");
  CHECK(note_of(table, "gap_monotone") == "1");

  // a function outside the space cannot be dilated toward it
  auto sing = AnalyticFunction::power_factor(Complex(1.0, 0.0), 0.75);
  CHECK_THROWS_AS(pshardy::dilation_study(sing, HardyExponent(2.0), u,
                                          {0.5, 0.9}),
                  std::domain_error);
}

TEST_CASE("norm under a moving atom traces the boundary modulus") {
  // ||1 + z||^2 under the atom at t is 2 + 2t, increasing toward
  // |f(1)|^2 = 4
  auto f = one_plus_z();
  auto table = pshardy::canonical_ball_study(f, HardyExponent(2.0),
                                             {0.0, 0.25, 0.5, 0.75});
  REQUIRE(table.rows.size() == 4);
  for (const auto& row : table.rows) {
    const double t = row.parameter;
    CHECK(row.value == doctest::Approx(2.0 + 2.0 * t).epsilon(1e-8));
    CHECK(row.reference == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(row.abs_error ==
          doctest::Approx(2.0 * (1.0 - t)).epsilon(1e-6));
  }
  CHECK(note_of(table, "row_monotone") == "1");
  // every row already exceeds 1, so the first exit is the first parameter
  CHECK(std::stod(note_of(table, "first_exit_t")) == doctest::Approx(0.0));
}

TEST_CASE("level pairings converge weak-star to the boundary pairing") {
  auto u = pshardy::single_atom(Complex(0.5, 0.0));
  auto f = AnalyticFunction::polynomial({Complex(0, 0), Complex(1, 0)});
  auto table =
      pshardy::weakstar_study(u, f, pshardy::field_abs2(), HardyExponent(2.0),
                              {-0.5, -0.25, -0.125, -0.0625});
  REQUIRE(table.rows.size() == 4);
  // boundary pairing: int cos(theta) P(1/2, theta) dlambda = 1/2
  for (const auto& row : table.rows)
    CHECK(row.reference == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(table.rows.back().abs_error < table.rows.front().abs_error);
  CHECK(table.rows.back().abs_error < 1e-3);
  CHECK(note_of(table, "h_membership") == "yes");

  CHECK_THROWS_AS(
      pshardy::weakstar_study(u, f, pshardy::field_abs2(), HardyExponent(1.0),
                              {-0.5, -0.25}),
      std::domain_error);
}

TEST_CASE("Taylor sections of dilates converge with the tail oracle") {
  auto f = AnalyticFunction::power_factor(Complex(0.95, 0.0), 1.0);
  auto u = pshardy::single_atom(0.0);
  auto table =
      pshardy::density_study(f, HardyExponent(2.0), u, {1, 2, 3, 4, 5});
  REQUIRE(table.rows.size() == 5);
  double prev = pshardy::kPosInf;
  for (const auto& row : table.rows) {
    const int j = int(row.parameter);
    const double t = 1.0 - std::pow(2.0, -j);
    const int n = 1 << j;
    const double q2 = std::pow(0.95 * t, 2.0);
    const double tail = std::pow(q2, n + 1) / (1.0 - q2);
    const double oracle = std::sqrt(tail);
    CAPTURE(j);
    CHECK(row.value <= 2.0 * oracle);
    CHECK(row.value >= 0.5 * oracle);
    CHECK(row.value < prev);
    prev = row.value;
  }
  CHECK_THROWS_AS(
      pshardy::density_study(f, HardyExponent(2.0), u, {0, 3}),
      std::domain_error);
}

TEST_CASE("truncated exhaustions grow norms at the sqrt-2 rate") {
  auto f = AnalyticFunction::power_factor(Complex(1.0, 0.0), 0.75);
  auto sched = pshardy::geometric_schedule(0.25, 0.5);
  auto table = pshardy::strict_inclusion_study(f, HardyExponent(1.0), sched,
                                               {8, 9, 10, 11, 12});
  REQUIRE(table.rows.size() == 5);
  for (const auto& row : table.rows) {
    CAPTURE(row.parameter);
    CHECK(row.abs_error <= 0.05);  // |N_K / N_{K-1} - sqrt 2|
    CHECK(row.value > row.reference);
  }
  CHECK(note_of(table, "growth") == "1");
  CHECK(note_of(table, "classical_converged") == "1");
  CHECK(std::stod(note_of(table, "classical_norm")) ==
        doctest::Approx(fractional_h1_oracle()).epsilon(1e-6));
}

TEST_CASE("pointwise-ordered exhaustions order the norms") {
  auto f = one_plus_z();
  // log|z| <= (|z|^2 - 1)/2 on the disk
  auto table = pshardy::comparison_study(f, HardyExponent(2.0),
                                         pshardy::quad_only(),
                                         pshardy::single_atom(0.0));
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].value ==
        doctest::Approx(table.rows[0].reference).epsilon(1e-8));
  CHECK(note_of(table, "ordered") == "1");

  CHECK_THROWS_AS(pshardy::comparison_study(f, HardyExponent(2.0),
                                            pshardy::single_atom(0.0),
                                            pshardy::quad_only()),
                  std::domain_error);
}
