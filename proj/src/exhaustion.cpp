#include "pshardy/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pshardy/kernels.hpp"

namespace pshardy {

Exhaustion::Exhaustion(std::vector<GreenAtom> atoms, double quad_weight)
    : atoms_(std::move(atoms)), quad_weight_(quad_weight) {
  double mass = quad_weight_;
  for (const auto& a : atoms_) {
    if (!is_finite(a.pole) || std::abs(a.pole) >= 1.0)
      throw std::domain_error("Exhaustion: pole must satisfy |a| < 1");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw std::domain_error("Exhaustion: atom weight must be positive");
    mass += a.weight;
  }
  if (!(quad_weight_ >= 0.0) || !std::isfinite(quad_weight_))
    throw std::domain_error("Exhaustion: quad weight must be >= 0");
  if (atoms_.empty() && quad_weight_ == 0.0)
    throw std::domain_error("Exhaustion: needs at least one component");
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    for (std::size_t j = i + 1; j < atoms_.size(); ++j)
      if (atoms_[i].pole == atoms_[j].pole)
        throw std::domain_error("Exhaustion: poles must be distinct");
  if (std::abs(mass - 1.0) > 1e-12)
    throw std::domain_error("Exhaustion: weights must sum to 1 within 1e-12");
}

double Exhaustion::value(Complex z) const {
  double s = 0.0;
  for (const auto& a : atoms_) {
    if (z == a.pole) return kNegInf;
    s += a.weight * (std::log(std::abs(z - a.pole)) -
                     std::log(std::abs(1.0 - std::conj(a.pole) * z)));
  }
  if (quad_weight_ != 0.0) s += quad_weight_ * 0.5 * (std::norm(z) - 1.0);
  return s;
}

Complex Exhaustion::gradient(Complex z) const {
  Complex g(0.0, 0.0);
  for (const auto& a : atoms_) g += a.weight * green_gradient(z, a.pole);
  if (quad_weight_ != 0.0) g += quad_weight_ * z;
  return g;
}

double Exhaustion::safe_radius() const {
  double r = 1.15;
  for (const auto& a : atoms_) {
    const double m = std::abs(a.pole);
    if (m > 0.0) r = std::min(r, 0.5 * (1.0 + 1.0 / m));
  }
  return r;
}

ScalarField Exhaustion::field() const {
  ScalarField f;
  f.value = [*this](Complex z) { return value(z); };
  f.gradient = [*this](Complex z) { return gradient(z); };
  f.safe_radius = safe_radius();
  return f;
}

std::string Exhaustion::to_record() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& a : atoms_)
    os << "atom " << a.pole.real() << " " << a.pole.imag() << " " << a.weight
       << "\n";
  os << "quad " << quad_weight_ << "\n";
  return os.str();
}

Exhaustion Exhaustion::parse_record(const std::string& text) {
  std::istringstream is(text);
  std::vector<GreenAtom> atoms;
  double quad = 0.0;
  bool quad_seen = false;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "atom") {
      double re, im, w;
      if (!(ls >> re >> im >> w))
        throw std::domain_error("Exhaustion record: malformed atom line");
      atoms.push_back({Complex(re, im), w});
    } else if (tag == "quad") {
      if (!(ls >> quad))
        throw std::domain_error("Exhaustion record: malformed quad line");
      quad_seen = true;
    } else {
      throw std::domain_error("Exhaustion record: unknown tag '" + tag + "'");
    }
  }
  if (!quad_seen && atoms.empty())
    throw std::domain_error("Exhaustion record: empty");
  return Exhaustion(std::move(atoms), quad);
}

Exhaustion single_atom(Complex pole, double weight) {
  return Exhaustion({{pole, weight}}, 1.0 - weight);
}

Exhaustion quad_only() { return Exhaustion({}, 1.0); }

Exhaustion atom_plus_quad(Complex pole, double atom_weight, double quad_weight) {
  return Exhaustion({{pole, atom_weight}}, quad_weight);
}

BoundaryDensity alpha(const Exhaustion& u, double tol) {
  BoundaryDensity d;
  const auto atoms = u.atoms();
  const double cq = u.quad_weight();
  d.density = [atoms, cq](double theta) {
    double s = cq;  // the quadratic part extends to the constant 1
    for (const auto& a : atoms) s += a.weight * poisson_raw(a.pole, theta);
    return s;
  };

  PeriodicOptions opt;
  opt.tol = tol;
  double closest = 0.0;
  for (const auto& a : atoms) closest = std::max(closest, std::abs(a.pole));
  if (closest > 0.999)
    for (const auto& a : atoms) opt.singular_angles.push_back(std::arg(a.pole));
  d.mass_report = periodic_integrate(d.density, opt);
  d.l1_mass = d.mass_report.value;

  const int n = 4096;
  double lo = kPosInf;
  for (int i = 0; i < n; ++i)
    lo = std::min(lo, d.density(kTwoPi * double(i) / double(n)));
  d.lower_bound = lo;
  return d;
}

double alpha_lower_bound(const Exhaustion& u) {
  double c = u.quad_weight();
  for (const auto& a : u.atoms()) {
    const double m = std::abs(a.pole);
    c += a.weight * (1.0 - m) / (1.0 + m);
  }
  return c;
}

QuadratureReport partial_poisson_mass(const Exhaustion& u, double r,
                                      const BoundaryAngle& theta, double tol) {
  if (!(r < 0) || !std::isfinite(r))
    throw std::domain_error("partial_poisson_mass: need r < 0");
  QuadratureReport rep;
  rep.value = 0.0;
  rep.est_error = 0.0;
  rep.converged = true;
  for (const auto& a : u.atoms())  // u(a_j) = -inf < r: atoms always inside
    rep.value += a.weight * poisson_raw(a.pole, theta.radians());

  const double cq = u.quad_weight();
  if (cq != 0.0) {
    auto uv = [&u](Complex z) { return u.value(z); };
    DiskOptions opt;
    opt.tol = tol;
    const double th = theta.radians();
    QuadratureReport area = disk_integrate(
        [th](Complex z) { return poisson_raw(z, th); }, sublevel(uv, r), opt);
    rep.value += cq * area.value / kPi;
    rep.est_error += cq * area.est_error / kPi;
    rep.cells_or_nodes = area.cells_or_nodes;
    rep.converged = area.converged;
  }
  return rep;
}

QuadratureReport boundary_pair(const Exhaustion& u,
                               const std::function<double(double)>& g,
                               double tol,
                               const std::vector<double>& singular_angles) {
  const BoundaryDensity d = alpha(u);
  PeriodicOptions opt;
  opt.tol = tol;
  opt.singular_angles = singular_angles;
  for (const auto& a : u.atoms())
    if (std::abs(a.pole) > 0.999 || !singular_angles.empty())
      opt.singular_angles.push_back(std::arg(a.pole));
  return periodic_integrate(
      [&](double th) { return g(th) * d.density(th); }, opt);
}

TruncationSchedule geometric_schedule(double pole_ratio, double weight_ratio) {
  if (!(pole_ratio > 0 && pole_ratio < 1) ||
      !(weight_ratio > 0 && weight_ratio < 1))
    throw std::domain_error("geometric_schedule: ratios must lie in (0,1)");
  TruncationSchedule s;
  s.term = [pole_ratio, weight_ratio](int k) {
    return GreenAtom{Complex(1.0 - std::pow(pole_ratio, k), 0.0),
                     std::pow(weight_ratio, k)};
  };
  return s;
}

Exhaustion TruncationSchedule::truncate(int K) const {
  if (K < 1) throw std::domain_error("TruncationSchedule: K >= 1");
  std::vector<GreenAtom> atoms;
  double mass = 0.0;
  for (int k = 1; k <= K; ++k) {
    atoms.push_back(term(k));
    mass += atoms.back().weight;
  }
  for (auto& a : atoms) a.weight /= mass;
  return Exhaustion(std::move(atoms), 0.0);
}

}  // namespace pshardy
