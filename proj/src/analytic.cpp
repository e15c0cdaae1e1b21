#include "pshardy/analytic.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace pshardy {

namespace {

constexpr double kUnitEps = 1e-12;

bool on_unit_circle(Complex c) { return std::abs(std::abs(c) - 1.0) <= kUnitEps; }

// shortest angular distance mod 2pi
double angle_dist(double a, double b) {
  return std::abs(std::remainder(a - b, kTwoPi));
}

std::vector<Complex> strip_trailing(std::vector<Complex> v) {
  while (v.size() > 1 && v.back() == Complex(0.0, 0.0)) v.pop_back();
  return v;
}

}  // namespace

AnalyticFunction::AnalyticFunction(std::vector<Complex> poly,
                                   std::vector<PowerFactor> factors)
    : poly_(strip_trailing(std::move(poly))), factors_(std::move(factors)) {
  if (poly_.empty()) poly_ = {Complex(1.0, 0.0)};
  for (const auto& c : poly_)
    if (!is_finite(c))
      throw std::domain_error("AnalyticFunction: non-finite coefficient");
  for (const auto& fac : factors_) {
    if (!is_finite(fac.c) || std::abs(fac.c) > 1.0 + kUnitEps)
      throw std::domain_error("AnalyticFunction: factor needs |c| <= 1");
    if (!(fac.gamma > 0.0) || !std::isfinite(fac.gamma))
      throw std::domain_error("AnalyticFunction: factor exponent must be > 0");
  }
}

AnalyticFunction AnalyticFunction::polynomial(std::vector<Complex> coeffs) {
  return AnalyticFunction(std::move(coeffs), {});
}

AnalyticFunction AnalyticFunction::constant(Complex value) {
  return AnalyticFunction({value}, {});
}

AnalyticFunction AnalyticFunction::power_factor(Complex c, double gamma) {
  return AnalyticFunction({Complex(1.0, 0.0)}, {{c, gamma}});
}

Complex AnalyticFunction::eval(Complex z) const {
  Complex p(0.0, 0.0);
  for (std::size_t k = poly_.size(); k-- > 0;) p = p * z + poly_[k];
  Complex prod(1.0, 0.0);
  for (const auto& fac : factors_)
    prod *= std::pow(Complex(1.0, 0.0) - fac.c * z, -fac.gamma);
  return p * prod;
}

std::pair<Complex, Complex> AnalyticFunction::eval_pair(Complex z) const {
  Complex p(0.0, 0.0), dp(0.0, 0.0);
  for (std::size_t k = poly_.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + poly_[k];
  }
  Complex prod(1.0, 0.0), logd(0.0, 0.0);
  for (const auto& fac : factors_) {
    const Complex w = Complex(1.0, 0.0) - fac.c * z;
    prod *= std::pow(w, -fac.gamma);
    logd += fac.gamma * fac.c / w;
  }
  // f = p * prod, f' = prod * (p' + p * sum gamma c / (1 - c z))
  return {p * prod, prod * (dp + p * logd)};
}

Complex AnalyticFunction::deriv(Complex z) const { return eval_pair(z).second; }

std::vector<double> AnalyticFunction::singular_angles() const {
  std::vector<double> out;
  for (const auto& fac : factors_)
    if (on_unit_circle(fac.c)) out.push_back(std::arg(std::conj(fac.c)));
  return out;
}

std::vector<double> AnalyticFunction::boundary_zero_angles() const {
  std::vector<double> out;
  if (poly_.size() < 2) return out;
  // roots of the poly part sitting on the circle
  Eigen::Index d = Eigen::Index(poly_.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    companion(i, d - 1) = -poly_[i] / poly_.back();
    if (i + 1 < d) companion(i + 1, i) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Complex root = solver.eigenvalues()(i);
    if (std::abs(std::abs(root) - 1.0) <= 1e-9) out.push_back(std::arg(root));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> AnalyticFunction::quadrature_angles() const {
  std::vector<double> out = singular_angles();
  const std::vector<double> zeros = boundary_zero_angles();
  out.insert(out.end(), zeros.begin(), zeros.end());
  return out;
}

Complex AnalyticFunction::boundary_trace(double theta) const {
  for (const auto& fac : factors_)
    if (on_unit_circle(fac.c) &&
        angle_dist(theta, std::arg(std::conj(fac.c))) < 1e-12)
      return Complex(kPosInf, 0.0);
  return eval(std::polar(1.0, theta));
}

bool AnalyticFunction::trace_power_integrable(double p) const {
  const std::vector<double> angles = singular_angles();
  for (double a : angles) {
    double total = 0.0;
    for (const auto& fac : factors_)
      if (on_unit_circle(fac.c) &&
          angle_dist(a, std::arg(std::conj(fac.c))) < 1e-12)
        total += fac.gamma;
    if (!(total * p < 1.0)) return false;
  }
  return true;
}

AnalyticFunction AnalyticFunction::dilate(double t) const {
  if (!(t > 0.0 && t < 1.0))
    throw std::domain_error("dilate: t must lie in (0,1)");
  std::vector<Complex> poly = poly_;
  double tk = 1.0;
  for (std::size_t k = 1; k < poly.size(); ++k) {
    tk *= t;
    poly[k] *= tk;
  }
  std::vector<PowerFactor> factors = factors_;
  for (auto& fac : factors) fac.c *= t;
  return AnalyticFunction(std::move(poly), std::move(factors));
}

std::vector<Complex> AnalyticFunction::taylor(int n) const {
  if (n < 0) throw std::domain_error("taylor: degree must be >= 0");
  std::vector<Complex> acc(std::size_t(n) + 1, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < poly_.size() && k <= std::size_t(n); ++k)
    acc[k] = poly_[k];
  for (const auto& fac : factors_) {
    // (1 - c z)^{-gamma} = sum_m b_m z^m, b_0 = 1,
    // b_{m+1} = b_m c (gamma + m) / (m + 1)
    std::vector<Complex> series(std::size_t(n) + 1);
    series[0] = Complex(1.0, 0.0);
    for (int m = 0; m < n; ++m)
      series[m + 1] = series[m] * fac.c * ((fac.gamma + m) / double(m + 1));
    std::vector<Complex> next(std::size_t(n) + 1, Complex(0.0, 0.0));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) next[i + j] += acc[i] * series[j];
    acc = std::move(next);
  }
  return acc;
}

AnalyticFunction AnalyticFunction::taylor_section(int n) const {
  return polynomial(taylor(n));
}

std::vector<Complex> AnalyticFunction::interior_zeros() const {
  std::vector<Complex> out;
  if (poly_.size() < 2) return out;
  const Eigen::Index d = Eigen::Index(poly_.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    companion(i, d - 1) = -poly_[i] / poly_.back();
    if (i + 1 < d) companion(i + 1, i) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Complex root = solver.eigenvalues()(i);
    if (std::abs(root) < 1.0 - 1e-12) out.push_back(root);
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::string AnalyticFunction::to_record() const {
  std::ostringstream os;
  os.precision(17);
  os << "poly";
  for (const auto& c : poly_) os << " " << c.real() << " " << c.imag();
  os << "\n";
  for (const auto& fac : factors_)
    os << "factor " << fac.c.real() << " " << fac.c.imag() << " " << fac.gamma
       << "\n";
  return os.str();
}

AnalyticFunction AnalyticFunction::parse_record(const std::string& text) {
  std::istringstream is(text);
  std::vector<Complex> poly;
  std::vector<PowerFactor> factors;
  std::string line;
  bool poly_seen = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "poly") {
      double re, im;
      while (ls >> re >> im) poly.push_back(Complex(re, im));
      if (poly.empty())
        throw std::domain_error("function record: empty poly line");
      poly_seen = true;
    } else if (tag == "factor") {
      double re, im, gamma;
      if (!(ls >> re >> im >> gamma))
        throw std::domain_error("function record: malformed factor line");
      factors.push_back({Complex(re, im), gamma});
    } else {
      throw std::domain_error("function record: unknown tag '" + tag + "'");
    }
  }
  if (!poly_seen) poly = {Complex(1.0, 0.0)};
  return AnalyticFunction(std::move(poly), std::move(factors));
}

double lap_density_fp(const AnalyticFunction& f, const HardyExponent& p,
                      Complex z) {
  const auto [fv, dv] = f.eval_pair(z);
  const double af = std::abs(fv);
  const double pp = p.p();
  if (af == 0.0) {
    if (pp < 2.0)
      throw std::domain_error(
          "lap_density_fp: singular at a zero of f for p < 2");
    return pp == 2.0 ? (pp * pp / kTwoPi) * std::norm(dv) : 0.0;
  }
  return (pp * pp / kTwoPi) * std::pow(af, pp - 2.0) * std::norm(dv);
}

std::function<double(Complex)> lap_density_field(const AnalyticFunction& f,
                                                 double p) {
  return [f, p](Complex z) {
    const auto [fv, dv] = f.eval_pair(z);
    const double af = std::abs(fv);
    if (af == 0.0) {
      if (p < 2.0) return kPosInf;
      return p == 2.0 ? (p * p / kTwoPi) * std::norm(dv) : 0.0;
    }
    return (p * p / kTwoPi) * std::pow(af, p - 2.0) * std::norm(dv);
  };
}

}  // namespace pshardy
