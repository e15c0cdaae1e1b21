#include "pshardy/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace pshardy {

namespace {

void require_schedule(const std::vector<double>& r_seq) {
  if (r_seq.empty()) throw std::domain_error("r_seq must not be empty");
  for (std::size_t i = 0; i < r_seq.size(); ++i) {
    if (!std::isfinite(r_seq[i]) || r_seq[i] >= 0.0)
      throw std::domain_error("level heights must be finite and negative");
    if (i > 0 && r_seq[i] <= r_seq[i - 1])
      throw std::domain_error("r_seq must be strictly increasing");
  }
}

void require_dilations(const std::vector<double>& t_seq) {
  if (t_seq.empty()) throw std::domain_error("t_seq must not be empty");
  for (std::size_t i = 0; i < t_seq.size(); ++i) {
    if (!(t_seq[i] > 0.0 && t_seq[i] < 1.0))
      throw std::domain_error("dilation parameters must lie in (0, 1)");
    if (i > 0 && t_seq[i] <= t_seq[i - 1])
      throw std::domain_error("t_seq must be strictly increasing");
  }
}

// singular angles for boundary integrals: the function's own spikes plus
// the Poisson peaks of atoms close to the circle
std::vector<double> boundary_hints(const AnalyticFunction& f,
                                   const Exhaustion& u) {
  std::vector<double> angles = f.quadrature_angles();
  for (const GreenAtom& atom : u.atoms())
    if (std::abs(atom.pole) > 0.99) angles.push_back(std::arg(atom.pole));
  return angles;
}

double trace_abs(const AnalyticFunction& f, double theta) {
  const Complex w = f.boundary_trace(theta);
  return is_finite(w) ? std::abs(w) : kPosInf;
}

}  // namespace

NormResult norm_boundary(const AnalyticFunction& f, const HardyExponent& p,
                         const Exhaustion& u, double tol) {
  const double pp = p.p();
  const BoundaryDensity a = alpha(u);
  PeriodicOptions opt;
  opt.singular_angles = boundary_hints(f, u);
  auto integrand = [f, pp, a](double theta) {
    return std::pow(trace_abs(f, theta), pp) * a.density(theta);
  };
  NormResult out;
  out.p = pp;
  out.route = NormRoute::boundary;
  out.report = periodic_integrate_rel(integrand, tol, opt);
  out.power_value = out.report.value;
  out.value = std::pow(std::max(out.power_value, 0.0), 1.0 / pp);
  out.finite = out.report.converged && std::isfinite(out.value);
  return out;
}

NormResult norm_boundary_diff(const AnalyticFunction& fa,
                              const AnalyticFunction& fb,
                              const HardyExponent& p, const Exhaustion& u,
                              double tol) {
  const double pp = p.p();
  const BoundaryDensity a = alpha(u);
  PeriodicOptions opt;
  opt.singular_angles = boundary_hints(fa, u);
  for (double s : fb.quadrature_angles()) opt.singular_angles.push_back(s);
  auto integrand = [fa, fb, pp, a](double theta) {
    const Complex wa = fa.boundary_trace(theta);
    const Complex wb = fb.boundary_trace(theta);
    const double m =
        (is_finite(wa) && is_finite(wb)) ? std::abs(wa - wb) : kPosInf;
    return std::pow(m, pp) * a.density(theta);
  };
  NormResult out;
  out.p = pp;
  out.route = NormRoute::boundary;
  out.report = periodic_integrate_rel(integrand, tol, opt);
  out.power_value = out.report.value;
  out.value = std::pow(std::max(out.power_value, 0.0), 1.0 / pp);
  out.finite = out.report.converged && std::isfinite(out.value);
  return out;
}

NormResult norm_riesz(const AnalyticFunction& f, const HardyExponent& p,
                      const Exhaustion& u, double tol) {
  if (!f.singular_angles().empty())
    throw std::domain_error(
        "area route requires f analytic across the closed disk; "
        "use the boundary route");
  const double pp = p.p();

  double atom_part = 0.0;
  for (const GreenAtom& atom : u.atoms())
    atom_part += atom.weight * std::pow(std::abs(f.eval(atom.pole)), pp);

  const double cq = u.quad_weight();
  auto lap = lap_density_field(f, pp);
  auto integrand = [f, pp, cq, u, lap](Complex z) {
    double F = 0.0;
    if (cq > 0.0) F += cq * std::pow(std::abs(f.eval(z)), pp) / kPi;
    const double L = lap(z);
    if (L != 0.0) {
      const double w = u.value(z);
      F += (w == kNegInf) ? kPosInf : -w * L;
    }
    return F;
  };

  DiskOptions opt;
  opt.tol = tol;
  for (const GreenAtom& atom : u.atoms())
    opt.singular_points.push_back(atom.pole);
  for (const Complex& z : f.interior_zeros()) opt.singular_points.push_back(z);
  for (double s : f.boundary_zero_angles())
    opt.singular_points.push_back(std::polar(1.0, s));

  NormResult out;
  out.p = pp;
  out.route = NormRoute::riesz;
  out.report = disk_integrate(integrand, whole_disk(), opt);
  out.power_value = atom_part + out.report.value;
  out.report.value = out.power_value;
  out.value = std::pow(std::max(out.power_value, 0.0), 1.0 / pp);
  out.finite = out.report.converged && std::isfinite(out.value);
  return out;
}

std::vector<double> default_levels() {
  std::vector<double> r_seq;
  for (int k = 1; k <= 9; ++k) r_seq.push_back(-std::ldexp(1.0, -k));
  r_seq.push_back(-1e-3);
  return r_seq;
}

NormResult norm_levels(const AnalyticFunction& f, const HardyExponent& p,
                       const Exhaustion& u, const std::vector<double>& r_seq,
                       double tol) {
  if (!f.singular_angles().empty())
    throw std::domain_error(
        "level route requires f analytic across the closed disk; "
        "use the boundary route");
  require_schedule(r_seq);
  const double pp = p.p();
  const TestField phi = field_abs_power(f, pp);

  NormResult out;
  out.p = pp;
  out.route = NormRoute::levels;
  out.finite = true;
  for (double r : r_seq) {
    const LevelPairing lp = mu_pair_lj(u, r, phi, tol);
    out.rows.emplace_back(r, lp.value);
    out.row_reports.push_back(lp.report);
    out.finite = out.finite && lp.report.converged;
  }
  out.report = out.row_reports.back();
  out.power_value = out.rows.back().second;
  out.value = std::pow(std::max(out.power_value, 0.0), 1.0 / pp);

  // one Richardson step: the rows approach the limit linearly in r, so
  // extrapolate to r = 0 from the last two rows and clamp by monotonicity
  if (out.rows.size() >= 2) {
    const auto& [rk, vk] = out.rows[out.rows.size() - 1];
    const auto& [rk1, vk1] = out.rows[out.rows.size() - 2];
    double limit = vk - rk * (vk - vk1) / (rk - rk1);
    limit = std::max(limit, vk);
    out.extrapolated = std::pow(std::max(limit, 0.0), 1.0 / pp);
  } else {
    out.extrapolated = out.value;
  }
  return out;
}

MembershipResult membership(const AnalyticFunction& f, const HardyExponent& p,
                            const Exhaustion& u, double tol) {
  const double pp = p.p();
  const BoundaryDensity a = alpha(u);
  PeriodicOptions opt;
  opt.singular_angles = boundary_hints(f, u);
  auto integrand = [f, pp, a](double theta) {
    return std::pow(trace_abs(f, theta), pp) * a.density(theta);
  };

  MembershipResult res;
  QuadratureReport last;
  for (std::int64_t budget : {std::int64_t{200'000}, std::int64_t{800'000},
                              std::int64_t{3'200'000}}) {
    PeriodicOptions cur = opt;
    cur.max_evals = budget;
    const QuadratureReport rep = periodic_integrate_rel(integrand, tol, cur);
    res.attempts.push_back(rep.value);
    last = rep;
    if (rep.converged) {
      res.verdict = Membership::yes;
      break;
    }
  }
  if (res.verdict != Membership::yes) {
    bool growing = res.attempts.size() >= 2;
    for (std::size_t i = 1; i < res.attempts.size(); ++i)
      growing = growing && res.attempts[i] > 1.05 * res.attempts[i - 1];
    res.verdict = growing ? Membership::no : Membership::inconclusive;
  }

  res.norm.p = pp;
  res.norm.route = NormRoute::boundary;
  res.norm.report = last;
  res.norm.power_value = last.value;
  res.norm.value = std::pow(std::max(last.value, 0.0), 1.0 / pp);
  res.norm.finite = res.verdict == Membership::yes;
  return res;
}

ConvergenceTable dilation_study(const AnalyticFunction& f,
                                const HardyExponent& p, const Exhaustion& u,
                                const std::vector<double>& t_seq, double tol) {
  require_dilations(t_seq);
  const MembershipResult mem = membership(f, p, u, tol);
  if (mem.verdict == Membership::no)
    throw std::domain_error(
        "dilation study requires f in the space; membership failed");
  const NormResult base = norm_boundary(f, p, u, tol);

  ConvergenceTable table;
  table.experiment = "dilation";
  for (double t : t_seq) {
    const AnalyticFunction ft = f.dilate(t);
    const NormResult vt = norm_boundary(ft, p, u, tol);
    const NormResult gap = norm_boundary_diff(ft, f, p, u, tol);
    table.add_row(t, vt.value, base.value, gap.value,
                  vt.report.converged && gap.report.converged &&
                      base.report.converged);
  }
  table.note("limit", base.value);
  table.note("norm_monotone",
             table.values_nondecreasing(1e-10) ? "pass" : "fail");
  table.note("gap_monotone", table.errors_nonincreasing(1e-10) ? "pass" : "fail");
  table.note("membership",
             mem.verdict == Membership::yes ? "pass" : "inconclusive");
  return table;
}

ConvergenceTable canonical_ball_study(const AnalyticFunction& f,
                                      const HardyExponent& p,
                                      const std::vector<double>& t_seq,
                                      double tol) {
  require_dilations(t_seq);
  const double pp = p.p();
  const double boundary_power = std::pow(trace_abs(f, 0.0), pp);

  ConvergenceTable table;
  table.experiment = "balls";
  std::string first_exit = "none";
  for (double t : t_seq) {
    const Exhaustion ut = single_atom(Complex(t, 0.0));
    const NormResult n = norm_boundary(f, p, ut, tol);
    table.add_row(t, n.power_value, boundary_power,
                  std::abs(n.power_value - boundary_power),
                  n.report.converged);
    if (first_exit == "none" && n.power_value > 1.0)
      first_exit = format_double(t);
  }
  table.note("first_exit_t", first_exit);
  table.note("boundary_power", boundary_power);
  table.note("row_monotone", table.values_nondecreasing(1e-10) ? "pass" : "fail");
  return table;
}

ConvergenceTable weakstar_study(const Exhaustion& u, const AnalyticFunction& f,
                                const TestField& phi, const HardyExponent& p,
                                const std::vector<double>& r_seq, double tol,
                                int grid_n) {
  if (p.p() <= 1.0)
    throw std::domain_error("weak-star pairing requires p > 1");
  require_schedule(r_seq);
  const double pp = p.p();
  const BoundaryDensity a = alpha(u);

  PeriodicOptions opt;
  opt.singular_angles = boundary_hints(f, u);
  auto habs = [f, pp, a](double theta) {
    const Complex w = f.boundary_trace(theta);
    const double m = is_finite(w) ? std::abs(w.real()) : kPosInf;
    return std::pow(m, pp) * a.density(theta);
  };
  const QuadratureReport hmem = periodic_integrate_rel(habs, 1e-6, opt);

  std::vector<double> angles = opt.singular_angles;
  for (const Complex& s : phi.singular_points)
    if (std::abs(std::abs(s) - 1.0) < 1e-9) angles.push_back(std::arg(s));
  auto gb = [f, phi](double theta) {
    const Complex w = f.boundary_trace(theta);
    if (!is_finite(w)) return kPosInf;
    return phi.value(std::polar(1.0, theta)) * w.real();
  };
  const QuadratureReport ref = boundary_pair(u, gb, tol, angles);

  auto pv = [phi, f](Complex z) { return phi.value(z) * f.eval(z).real(); };
  ConvergenceTable table;
  table.experiment = "weakstar";
  for (double r : r_seq) {
    LevelPairing lp;
    bool ok = false;
    std::string fail;
    for (int attempt = 0; attempt < 5 && !ok; ++attempt) {
      const double rr = r * (1.0 + 1e-4 * attempt);
      try {
        lp = mu_pair_contour(u, rr, pv, tol, grid_n);
        ok = true;
      } catch (const std::runtime_error& e) {
        fail = e.what();
      }
    }
    if (!ok)
      throw std::runtime_error("level tracing failed near r = " +
                               format_double(r) + ": " + fail);
    table.add_row(r, lp.value, ref.value, std::abs(lp.value - ref.value),
                  lp.report.converged);
  }
  table.note("limit", ref.value);
  bool strictly_decreasing = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    strictly_decreasing =
        strictly_decreasing && table.rows[i].abs_error < table.rows[i - 1].abs_error;
  table.note("errors_decreasing", strictly_decreasing ? "pass" : "fail");
  table.note("h_membership", hmem.converged ? "pass" : "inconclusive");
  return table;
}

ConvergenceTable density_study(const AnalyticFunction& f,
                               const HardyExponent& p, const Exhaustion& u,
                               const std::vector<int>& j_seq, double tol) {
  if (j_seq.empty()) throw std::domain_error("j_seq must not be empty");
  for (std::size_t i = 0; i < j_seq.size(); ++i) {
    if (j_seq[i] < 1 || j_seq[i] > 14)
      throw std::domain_error("section exponents j must lie in 1..14");
    if (i > 0 && j_seq[i] <= j_seq[i - 1])
      throw std::domain_error("j_seq must be strictly increasing");
  }
  const MembershipResult mem = membership(f, p, u, tol);
  if (mem.verdict == Membership::no)
    throw std::domain_error(
        "density study requires f in the space; membership failed");

  ConvergenceTable table;
  table.experiment = "density";
  for (int j : j_seq) {
    const double t = 1.0 - std::ldexp(1.0, -j);
    const int n = 1 << j;
    const AnalyticFunction ft = f.dilate(t);
    const AnalyticFunction section = ft.taylor_section(n);
    const NormResult gap = norm_boundary_diff(section, ft, p, u, tol);
    table.add_row(j, gap.value, 0.0, gap.value, gap.report.converged);
  }
  table.note("final_error", table.rows.back().value);
  table.note("errors_decreasing",
             table.errors_nonincreasing(1e-12) ? "pass" : "fail");
  return table;
}

ConvergenceTable strict_inclusion_study(const AnalyticFunction& f,
                                        const HardyExponent& p,
                                        const TruncationSchedule& schedule,
                                        const std::vector<int>& K_seq,
                                        double tol) {
  if (K_seq.empty()) throw std::domain_error("K_seq must not be empty");
  for (std::size_t i = 0; i < K_seq.size(); ++i) {
    if (K_seq[i] < 2)
      throw std::domain_error("truncation indices must be at least 2");
    if (i > 0 && K_seq[i] <= K_seq[i - 1])
      throw std::domain_error("K_seq must be strictly increasing");
  }

  std::map<int, std::pair<double, bool>> cache;
  auto power_at = [&](int K) {
    auto it = cache.find(K);
    if (it == cache.end()) {
      const NormResult n = norm_boundary(f, p, schedule.truncate(K), tol);
      it = cache.emplace(K, std::make_pair(n.power_value, n.report.converged))
               .first;
    }
    return it->second;
  };

  ConvergenceTable table;
  table.experiment = "strict-inclusion";
  const double root2 = std::sqrt(2.0);
  for (int K : K_seq) {
    const auto [nk, okk] = power_at(K);
    const auto [nk1, okk1] = power_at(K - 1);
    const double ratio = nk / nk1;
    table.add_row(K, nk, nk1, std::abs(ratio - root2), okk && okk1);
  }
  bool in_window = true;
  for (const TableRow& row : table.rows)
    in_window = in_window && row.abs_error <= 0.05;
  table.note("ratio_window", in_window ? "pass" : "fail");
  table.note("growth", table.values_nondecreasing(0.0) ? "pass" : "fail");

  const NormResult classical =
      norm_boundary(f, p, single_atom(Complex(0.0, 0.0)), tol);
  table.note("classical_norm", classical.value);
  table.note("classical_converged",
             classical.report.converged ? "pass" : "fail");
  return table;
}

ConvergenceTable comparison_study(const AnalyticFunction& f,
                                  const HardyExponent& p, const Exhaustion& u,
                                  const Exhaustion& v, double tol) {
  for (int ix = 0; ix < 100; ++ix) {
    for (int iy = 0; iy < 100; ++iy) {
      const double x = -0.99 + 1.98 * ix / 99.0;
      const double y = -0.99 + 1.98 * iy / 99.0;
      const Complex z(x, y);
      if (std::abs(z) >= 0.999) continue;
      const double uv = u.value(z);
      const double vv = v.value(z);
      if (vv > uv + 1e-10)
        throw std::domain_error(
            "comparison requires v <= u on the disk; sampled violation at z = (" +
            format_double(x) + ", " + format_double(y) + ")");
    }
  }

  const NormResult nu = norm_boundary(f, p, u, tol);
  const NormResult nv = norm_boundary(f, p, v, tol);
  ConvergenceTable table;
  table.experiment = "compare";
  table.add_row(0.0, nu.value, nv.value, std::max(0.0, nu.value - nv.value),
                nu.report.converged && nv.report.converged);
  const double slack = 1e-7 * (1.0 + nv.value);
  table.note("ordered", nu.value <= nv.value + slack ? "pass" : "fail");
  return table;
}

}  // namespace pshardy
