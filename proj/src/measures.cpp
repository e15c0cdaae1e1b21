#include "pshardy/measures.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace pshardy {

namespace {

void require_level(double r) {
  if (!std::isfinite(r) || r >= 0.0)
    throw std::domain_error("level height r must be finite and negative");
}

}  // namespace

TestField field_one() {
  TestField f;
  f.name = "one";
  f.value = [](Complex) { return 1.0; };
  f.lap_density = [](Complex) { return 0.0; };
  f.harmonic = true;
  return f;
}

TestField field_re() {
  TestField f;
  f.name = "re";
  f.value = [](Complex z) { return z.real(); };
  f.lap_density = [](Complex) { return 0.0; };
  f.harmonic = true;
  return f;
}

TestField field_im() {
  TestField f;
  f.name = "im";
  f.value = [](Complex z) { return z.imag(); };
  f.lap_density = [](Complex) { return 0.0; };
  f.harmonic = true;
  return f;
}

TestField field_abs2() {
  TestField f;
  f.name = "abs2";
  f.value = [](Complex z) { return std::norm(z); };
  // classical Laplacian of |z|^2 is 4, normalized by 2 pi
  f.lap_density = [](Complex) { return 2.0 / kPi; };
  return f;
}

TestField field_abs_1plus2() {
  TestField f;
  f.name = "abs_1plus2";
  f.value = [](Complex z) { return std::norm(1.0 + z); };
  f.lap_density = [](Complex) { return 2.0 / kPi; };
  return f;
}

TestField field_exp_re() {
  TestField f;
  f.name = "exp_re";
  f.value = [](Complex z) { return std::exp(z.real()); };
  f.lap_density = [](Complex z) { return std::exp(z.real()) / kTwoPi; };
  return f;
}

TestField field_abs_power(const AnalyticFunction& f, double p) {
  HardyExponent exponent(p);
  TestField out;
  out.name = "abs_power";
  out.value = [f, p](Complex z) { return std::pow(std::abs(f.eval(z)), p); };
  out.lap_density = lap_density_field(f, p);
  for (const Complex& z : f.interior_zeros()) out.singular_points.push_back(z);
  for (double a : f.quadrature_angles())
    out.singular_points.push_back(std::polar(1.0, a));
  return out;
}

TestField field_by_name(const std::string& name) {
  if (name == "one") return field_one();
  if (name == "re") return field_re();
  if (name == "im") return field_im();
  if (name == "abs2") return field_abs2();
  if (name == "abs_1plus2") return field_abs_1plus2();
  if (name == "exp_re") return field_exp_re();
  throw std::domain_error(
      "unknown test field '" + name +
      "' (expected one, re, im, abs2, abs_1plus2 or exp_re)");
}

LevelPairing mu_pair_lj(const Exhaustion& u, double r, const TestField& phi,
                        double tol) {
  require_level(r);

  double atom_part = 0.0;
  for (const GreenAtom& atom : u.atoms()) {
    const double pv = phi.value(atom.pole);
    if (!is_finite(pv))
      throw std::domain_error(
          "test field is not finite at an atom of the exhaustion");
    atom_part += atom.weight * pv;
  }

  LevelPairing out;
  out.r = r;
  out.route = PairingRoute::lelong_jensen;

  const double cq = u.quad_weight();
  if (cq == 0.0 && phi.harmonic) {
    // atoms only, harmonic test field: the pairing is exact and r-free
    out.value = atom_part;
    out.report.value = atom_part;
    out.report.est_error = 0.0;
    out.report.converged = true;
    return out;
  }

  DiskOptions opt;
  opt.tol = tol;
  for (const GreenAtom& atom : u.atoms()) opt.singular_points.push_back(atom.pole);
  for (const Complex& z : phi.singular_points) opt.singular_points.push_back(z);

  const bool harmonic = phi.harmonic;
  auto integrand = [u, phi, cq, r, harmonic](Complex z) -> double {
    double F = 0.0;
    if (cq > 0.0) F += cq * phi.value(z) / kPi;
    if (!harmonic) {
      const double lap = phi.lap_density(z);
      if (lap != 0.0) {
        const double w = u.value(z);
        F += (w == kNegInf) ? (lap > 0.0 ? kPosInf : kNegInf) : (r - w) * lap;
      }
    }
    return F;
  };

  auto uval = [u](Complex z) { return u.value(z); };
  const QuadratureReport rep = disk_integrate(integrand, sublevel(uval, r), opt);
  out.value = atom_part + rep.value;
  out.report = rep;
  out.report.value = out.value;
  return out;
}

LevelPairing mu_pair_contour(const Exhaustion& u, double r,
                             const std::function<double(Complex)>& phi,
                             double tol, int grid_n) {
  require_level(r);

  LevelsetOptions lopt;
  lopt.grid_n = grid_n;
  const ScalarField field = u.field();
  std::vector<PolylineContour> contours = trace_levelset(field, r, lopt);
  for (const PolylineContour& c : contours)
    if (!c.closed)
      throw std::runtime_error("level curve is not closed; tracing failed");

  auto density = [&field, &phi](Complex z) {
    return phi(z) * std::abs(field.gradient(z)) / kTwoPi;
  };
  auto total = [&]() {
    double s = 0.0;
    for (const PolylineContour& c : contours) s += contour_integrate(c, density);
    return s;
  };

  double prev = total();
  double diff = kPosInf;
  std::size_t vertices = 0;
  for (int round = 0; round < 16; ++round) {
    vertices = 0;
    for (PolylineContour& c : contours) {
      c = refine_contour(c, field, r, lopt);
      vertices += c.vertices.size();
    }
    const double cur = total();
    diff = std::abs(cur - prev);
    prev = cur;
    if (diff <= tol || vertices > 2'000'000) break;
  }

  LevelPairing out;
  out.r = r;
  out.route = PairingRoute::contour;
  out.value = prev;
  out.report.value = prev;
  out.report.est_error = std::max(diff, 1e-11);
  out.report.cells_or_nodes = static_cast<std::int64_t>(vertices);
  out.report.converged = diff <= tol;
  return out;
}

LevelPairing mu_mass(const Exhaustion& u, double r, double tol) {
  return mu_pair_lj(u, r, field_one(), tol);
}

ConvergenceTable monotonicity_table(const Exhaustion& u, const TestField& phi,
                                    const std::vector<double>& r_seq,
                                    double tol) {
  if (r_seq.empty()) throw std::domain_error("r_seq must not be empty");
  for (std::size_t i = 0; i < r_seq.size(); ++i) {
    require_level(r_seq[i]);
    if (i > 0 && r_seq[i] <= r_seq[i - 1])
      throw std::domain_error("r_seq must be strictly increasing");
  }

  // precondition check by sampling: phi >= 0 and subharmonic
  for (int ir = 0; ir <= 16; ++ir) {
    const double rho = 0.06 * ir;
    for (int ia = 0; ia < 64; ++ia) {
      const Complex z = std::polar(rho, kTwoPi * ia / 64.0);
      if (phi.value(z) < -1e-9)
        throw std::domain_error(
            "monotonicity requires a nonnegative test field");
      const double lap = phi.lap_density(z);
      if (is_finite(lap) && lap < -1e-9)
        throw std::domain_error(
            "monotonicity requires a subharmonic test field "
            "(nonnegative lap_density)");
    }
  }

  std::vector<double> boundary_angles;
  for (const Complex& z : phi.singular_points)
    if (std::abs(std::abs(z) - 1.0) < 1e-9)
      boundary_angles.push_back(std::arg(z));
  auto g = [&phi](double theta) { return phi.value(std::polar(1.0, theta)); };
  const QuadratureReport limit = boundary_pair(u, g, tol, boundary_angles);

  ConvergenceTable table;
  table.experiment = "monotone";
  double err_budget = limit.est_error + 1e-12;
  for (double r : r_seq) {
    const LevelPairing lp = mu_pair_lj(u, r, phi, tol);
    err_budget += lp.report.est_error;
    table.add_row(r, lp.value, limit.value, std::abs(lp.value - limit.value),
                  lp.report.converged && limit.converged);
  }
  table.note("monotone", table.values_nondecreasing(err_budget) ? "pass" : "fail");
  table.note("limit", limit.value);
  table.note("field", phi.name);
  return table;
}

}  // namespace pshardy
