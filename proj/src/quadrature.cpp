#include "pshardy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <set>

namespace pshardy {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 4> kGl8X = {0.1834346424956498, 0.5255324099163290,
                                         0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGl8W = {0.3626837833783620, 0.3137066458778873,
                                         0.2223810344533745, 0.1012285362903763};
constexpr std::array<double, 8> kGl16X = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGl16W = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
constexpr std::array<double, 2> kGl4X = {0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 2> kGl4W = {0.6521451548625461, 0.3478548451374538};

double gl8(const std::function<double(double)>& f, double a, double b,
           std::int64_t& evals) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    s += kGl8W[i] * (f(c + h * kGl8X[i]) + f(c - h * kGl8X[i]));
  evals += 8;
  return s * h;
}

double gl16(const std::function<double(double)>& f, double a, double b,
            std::int64_t& evals) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i)
    s += kGl16W[i] * (f(c + h * kGl16X[i]) + f(c - h * kGl16X[i]));
  evals += 16;
  return s * h;
}

struct Interval {
  double a, b, value, err;
};

struct IntervalWorse {
  bool operator()(const Interval& x, const Interval& y) const {
    if (x.err != y.err) return x.err < y.err;  // max-heap on err
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

Interval make_interval(const std::function<double(double)>& f, double a,
                       double b, std::int64_t& evals) {
  const double v16 = gl16(f, a, b, evals);
  const double v8 = gl8(f, a, b, evals);
  // Overflow near an endpoint marks a (possibly non-integrable) singularity:
  // surface it as infinite panel error, never as NaN ordering poison.
  if (!std::isfinite(v16) || !std::isfinite(v8))
    return {a, b, 0.0, kPosInf};
  return {a, b, v16, std::abs(v16 - v8)};
}

}  // namespace

QuadratureReport periodic_integrate(const std::function<double(double)>& g,
                                    const PeriodicOptions& opt) {
  QuadratureReport rep;
  const double tol_raw = opt.tol * kTwoPi;  // engine works on the raw integral

  if (opt.singular_angles.empty()) {
    // Node-doubling trapezoid; spectrally accurate for smooth periodic g.
    std::int64_t n = 16;
    double mean = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      const double v = g(kTwoPi * double(j) / double(n));
      if (!std::isfinite(v))
        throw std::domain_error("periodic_integrate: non-finite integrand");
      mean += v;
    }
    mean /= double(n);
    rep.cells_or_nodes = n;
    double prev_diff = kPosInf;
    while (2 * n <= opt.max_evals) {
      double odd = 0.0;
      for (std::int64_t j = 0; j < n; ++j) {
        const double v = g(kTwoPi * (2.0 * double(j) + 1.0) / double(2 * n));
        if (!std::isfinite(v))
          throw std::domain_error("periodic_integrate: non-finite integrand");
        odd += v;
      }
      odd /= double(n);
      const double next = 0.5 * (mean + odd);
      const double diff = std::abs(next - mean);
      mean = next;
      n *= 2;
      rep.cells_or_nodes = n;
      if (diff <= opt.tol && prev_diff <= std::max(opt.tol, 1e3 * opt.tol)) {
        rep.value = mean;
        rep.est_error = diff;
        rep.converged = true;
        return rep;
      }
      prev_diff = diff;
    }
    rep.value = mean;
    rep.est_error = prev_diff;
    rep.converged = false;
    return rep;
  }

  // Panels split at the declared singular angles, refined toward them with a
  // dyadic seed, then globally adaptive GL8/GL16 bisection. Each singularity
  // is approached in its own angular chart (node = s + tau with tau signed),
  // so offsets stay representable however small; g is evaluated at raw angles
  // possibly outside [0, 2pi) and must be 2pi-periodic.
  std::vector<double> sing;
  for (double s : opt.singular_angles) {
    double t = std::fmod(s, kTwoPi);
    if (t < 0) t += kTwoPi;
    sing.push_back(t);
  }
  std::sort(sing.begin(), sing.end());
  sing.erase(std::unique(sing.begin(), sing.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-13; }),
             sing.end());

  std::int64_t evals = 0;
  std::priority_queue<Interval, std::vector<Interval>, IntervalWorse> heap;
  double total = 0.0, total_err = 0.0;

  auto push = [&](double a, double b) {
    if (b - a <= 0) return;
    Interval iv = make_interval(g, a, b, evals);
    total += iv.value;
    total_err += iv.err;
    heap.push(iv);
  };

  const int seed_depth = 14;
  const std::size_t m = sing.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double a = sing[i];
    const double gap = (m == 1) ? kTwoPi
                                : ((i + 1 < m) ? sing[i + 1] - a
                                               : sing[0] + kTwoPi - a);
    const double b = (i + 1 < m) ? sing[i + 1] : sing[0];
    const double half = 0.5 * gap;
    // left half of the gap, graded toward a in a's chart
    push(a, a + half * std::ldexp(1.0, -seed_depth));
    for (int j = seed_depth; j >= 1; --j)
      push(a + half * std::ldexp(1.0, -j), a + half * std::ldexp(1.0, -(j - 1)));
    // right half, graded toward the next angle in its own chart (b - tau)
    for (int j = 1; j <= seed_depth; ++j)
      push(b - half * std::ldexp(1.0, -(j - 1)), b - half * std::ldexp(1.0, -j));
    push(b - half * std::ldexp(1.0, -seed_depth), b);
  }

  // Panels that can no longer be bisected are frozen with their error kept.
  double frozen = 0.0, frozen_err = 0.0;
  while (total_err + frozen_err > tol_raw && evals < opt.max_evals &&
         !heap.empty()) {
    Interval worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // machine resolution
      frozen += worst.value;
      frozen_err += worst.err;
      continue;
    }
    push(worst.a, mid);
    push(mid, worst.b);
  }

  rep.value = (total + frozen) / kTwoPi;
  rep.est_error = (total_err + frozen_err) / kTwoPi;
  rep.cells_or_nodes = evals;
  rep.converged = total_err + frozen_err <= tol_raw;
  return rep;
}

QuadratureReport periodic_integrate_rel(const std::function<double(double)>& g,
                                        double rel_tol,
                                        const PeriodicOptions& base) {
  PeriodicOptions rough = base;
  rough.tol = 1e-3;
  QuadratureReport first = periodic_integrate(g, rough);
  PeriodicOptions fine = base;
  fine.tol = std::max(rel_tol * std::abs(first.value), 1e-14);
  return periodic_integrate(g, fine);
}

// ---------------------------------------------------------------------------
// disk quadrature: adaptive quadtree with polygon cut cells
// ---------------------------------------------------------------------------

namespace {

struct Cell {
  double x0, y0, h;
};

enum class CellKind { out, interior, boundary };

struct DiskCtx {
  const std::function<double(Complex)>* F;
  const Region* region;
  const DiskOptions* opt;
  std::int64_t evals = 0;

  // Non-finite samples are kept as-is; they surface as infinite cell error
  // and drive subdivision away from the offending point.
  double eval_f(Complex z) const {
    for (const auto& e : opt->exclusions)
      if (std::abs(z - e.center) < e.radius) return 0.0;
    return (*F)(z);
  }
};

struct CellInfo {
  CellKind kind;
  // Bound on the integral content the cut-cell rule can miss inside this
  // cell: the area between the level curve and any chord approximation,
  // scaled by the local integrand size. Zero for cells certified clean.
  double allow;
};

// Nine-point sign scan: corners, edge midpoints, center. Mixed signs mean a
// boundary cell. A one-sided cell is certified only when every sampled level
// clears the sampled curvature scale; otherwise the curve may still clip the
// cell between samples (a corner cap smaller than half an edge leaves the
// parent and child chord rules in exact agreement), so the cell keeps an
// explicit allowance that shrinks as h^3 under subdivision.
CellInfo classify(DiskCtx& ctx, const Cell& c) {
  const double x1 = c.x0 + c.h, y1 = c.y0 + c.h;
  const double xm = c.x0 + 0.5 * c.h, ym = c.y0 + 0.5 * c.h;
  const std::array<Complex, 9> pts = {
      Complex(c.x0, c.y0), Complex(x1, c.y0),  Complex(x1, y1),
      Complex(c.x0, y1),   Complex(xm, c.y0),  Complex(x1, ym),
      Complex(xm, y1),     Complex(c.x0, ym),  Complex(xm, ym)};
  std::array<double, 9> lv;
  int neg = 0;
  bool finite = true;
  for (int i = 0; i < 9; ++i) {
    lv[i] = ctx.region->level(pts[i]);
    if (lv[i] < 0) ++neg;
    if (!std::isfinite(lv[i])) finite = false;
  }

  // sampled sagitta of the level over the edges and the diagonals
  double sag = 0.0;
  for (int e = 0; e < 4; ++e)
    sag = std::max(sag,
                   std::abs(lv[4 + e] - 0.5 * (lv[e] + lv[(e + 1) % 4])));
  sag = std::max(sag, std::abs(lv[8] - 0.5 * (lv[0] + lv[2])));
  sag = std::max(sag, std::abs(lv[8] - 0.5 * (lv[1] + lv[3])));

  CellKind kind = CellKind::boundary;
  if (neg == 0 || neg == 9) {
    kind = neg == 9 ? CellKind::interior : CellKind::out;
    double gmin = kPosInf;
    for (int i = 0; i < 9; ++i) gmin = std::min(gmin, std::abs(lv[i]));
    if (finite && gmin > 2.0 * sag) return {kind, 0.0};
  }

  // geometric area the chord rule may miss: caps of depth ~ sag / |grad|
  const double gx = (lv[5] - lv[7]) / c.h, gy = (lv[6] - lv[4]) / c.h;
  const double grad = std::hypot(gx, gy);
  double geom = c.h * c.h;
  if (finite && grad > 0.0 && std::isfinite(grad))
    geom = std::min(geom, 2.0 * c.h * sag / grad);
  double fs = std::abs(ctx.eval_f(Complex(xm, ym)));
  ctx.evals += 1;
  if (!std::isfinite(fs)) fs = 1.0;
  return {kind, geom * fs};
}

double gl4x4(DiskCtx& ctx, const Cell& c) {
  const double cx = c.x0 + 0.5 * c.h, cy = c.y0 + 0.5 * c.h, r = 0.5 * c.h;
  static const std::array<double, 4> xs = {-kGl4X[1], -kGl4X[0], kGl4X[0],
                                           kGl4X[1]};
  static const std::array<double, 4> ws = {kGl4W[1], kGl4W[0], kGl4W[0],
                                           kGl4W[1]};
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      s += ws[i] * ws[j] * ctx.eval_f(Complex(cx + r * xs[i], cy + r * xs[j]));
  ctx.evals += 16;
  return s * r * r;
}

// Root of level() along the segment p0-p1, endpoints of opposite sign.
Complex edge_root(const DiskCtx& ctx, Complex p0, Complex p1, double l0,
                  double l1) {
  // Plain bisection: robust with infinite endpoint levels.
  bool neg_at_0 = l0 < 0;
  (void)l1;
  for (int i = 0; i < 52; ++i) {
    const Complex m = 0.5 * (p0 + p1);
    const double lm = ctx.region->level(m);
    if ((lm < 0) == neg_at_0)
      p0 = m;
    else
      p1 = m;
  }
  return 0.5 * (p0 + p1);
}

// Degree-2 rule on the inside polygon of a boundary cell.
double polygon_rule(DiskCtx& ctx, const Cell& c) {
  const std::array<Complex, 4> corner = {
      Complex(c.x0, c.y0), Complex(c.x0 + c.h, c.y0),
      Complex(c.x0 + c.h, c.y0 + c.h), Complex(c.x0, c.y0 + c.h)};
  std::array<double, 4> lv;
  for (int i = 0; i < 4; ++i) lv[i] = ctx.region->level(corner[i]);

  std::vector<std::vector<Complex>> polys;
  const bool in0 = lv[0] < 0, in1 = lv[1] < 0, in2 = lv[2] < 0, in3 = lv[3] < 0;
  const int inside_count = int(in0) + int(in1) + int(in2) + int(in3);
  const bool diagonal = inside_count == 2 && (in0 == in2) && (in1 == in3);

  if (diagonal) {
    const double lc =
        ctx.region->level(Complex(c.x0 + 0.5 * c.h, c.y0 + 0.5 * c.h));
    if (lc >= 0) {
      // two separate corner triangles
      for (int i = 0; i < 4; ++i) {
        if (!(lv[i] < 0)) continue;
        const int prev = (i + 3) % 4, next = (i + 1) % 4;
        std::vector<Complex> tri;
        tri.push_back(edge_root(ctx, corner[i], corner[prev], lv[i], lv[prev]));
        tri.push_back(corner[i]);
        tri.push_back(edge_root(ctx, corner[i], corner[next], lv[i], lv[next]));
        polys.push_back(std::move(tri));
      }
    } else {
      // connected band: walk the perimeter
      std::vector<Complex> poly;
      for (int i = 0; i < 4; ++i) {
        if (lv[i] < 0) poly.push_back(corner[i]);
        const int j = (i + 1) % 4;
        if ((lv[i] < 0) != (lv[j] < 0))
          poly.push_back(edge_root(ctx, corner[i], corner[j], lv[i], lv[j]));
      }
      polys.push_back(std::move(poly));
    }
  } else {
    std::vector<Complex> poly;
    for (int i = 0; i < 4; ++i) {
      if (lv[i] < 0) poly.push_back(corner[i]);
      const int j = (i + 1) % 4;
      if ((lv[i] < 0) != (lv[j] < 0))
        poly.push_back(edge_root(ctx, corner[i], corner[j], lv[i], lv[j]));
    }
    if (poly.size() >= 3) polys.push_back(std::move(poly));
  }

  double total = 0.0;
  for (const auto& poly : polys) {
    if (poly.size() < 3) continue;
    Complex centroid(0, 0);
    for (const auto& p : poly) centroid += p;
    centroid /= double(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Complex a = poly[i], b = poly[(i + 1) % poly.size()];
      const double area =
          0.5 * ((a.real() - centroid.real()) * (b.imag() - centroid.imag()) -
                 (b.real() - centroid.real()) * (a.imag() - centroid.imag()));
      // edge-midpoint rule, exact through degree 2
      const double s = ctx.eval_f(0.5 * (a + b)) +
                       ctx.eval_f(0.5 * (b + centroid)) +
                       ctx.eval_f(0.5 * (centroid + a));
      ctx.evals += 3;
      total += area * s / 3.0;
    }
  }
  return total;
}

double cell_value(DiskCtx& ctx, const Cell& c, CellKind k) {
  switch (k) {
    case CellKind::out:
      return 0.0;
    case CellKind::interior:
      return gl4x4(ctx, c);
    case CellKind::boundary:
      return polygon_rule(ctx, c);
  }
  return 0.0;
}

struct Leaf {
  Cell c;
  double value;  // children sum (finer estimate)
  double err;    // |parent rule - children sum| plus the children allowances
  std::array<Cell, 4> kids;
  std::array<double, 4> kid_vals;
  std::array<CellInfo, 4> kid_info;
};

struct LeafWorse {
  bool operator()(const Leaf& x, const Leaf& y) const {
    if (x.err != y.err) return x.err < y.err;
    if (x.c.h != y.c.h) return x.c.h < y.c.h;
    if (x.c.x0 != y.c.x0) return x.c.x0 < y.c.x0;
    return x.c.y0 < y.c.y0;
  }
};

Leaf make_leaf(DiskCtx& ctx, const Cell& c, CellKind kind) {
  Leaf lf;
  lf.c = c;
  const double parent = cell_value(ctx, c, kind);
  const double h2 = 0.5 * c.h;
  lf.kids = {Cell{c.x0, c.y0, h2}, Cell{c.x0 + h2, c.y0, h2},
             Cell{c.x0, c.y0 + h2, h2}, Cell{c.x0 + h2, c.y0 + h2, h2}};
  double kid_sum = 0.0, kid_allow = 0.0;
  bool bad = !std::isfinite(parent);
  for (int i = 0; i < 4; ++i) {
    lf.kid_info[i] = classify(ctx, lf.kids[i]);
    lf.kid_vals[i] = cell_value(ctx, lf.kids[i], lf.kid_info[i].kind);
    if (!std::isfinite(lf.kid_vals[i])) {
      lf.kid_vals[i] = 0.0;
      bad = true;
    }
    kid_sum += lf.kid_vals[i];
    kid_allow += lf.kid_info[i].allow;
  }
  lf.value = kid_sum;
  lf.err = bad ? kPosInf : std::abs(parent - kid_sum) + kid_allow;
  return lf;
}

bool cell_contains(const Cell& c, Complex p) {
  return p.real() >= c.x0 && p.real() <= c.x0 + c.h && p.imag() >= c.y0 &&
         p.imag() <= c.y0 + c.h;
}

}  // namespace

Region whole_disk() {
  Region r;
  r.level = [](Complex z) { return std::abs(z) - 1.0; };
  r.contains = [](Complex z) { return std::abs(z) < 1.0; };
  return r;
}

Region sublevel(const std::function<double(Complex)>& u, double r) {
  Region reg;
  reg.level = [u, r](Complex z) {
    const double v = u(z);
    if (v == kNegInf) return std::max(-1.0, std::abs(z) - 1.0);
    return std::max(v - r, std::abs(z) - 1.0);
  };
  reg.contains = [u, r](Complex z) { return u(z) < r && std::abs(z) < 1.0; };
  return reg;
}

Region superlevel(const std::function<double(Complex)>& u, double r) {
  Region reg;
  reg.level = [u, r](Complex z) {
    const double v = u(z);
    if (v == kNegInf) return 1.0;  // a pole is never above the level
    return std::max(r - v, std::abs(z) - 1.0);
  };
  reg.contains = [u, r](Complex z) {
    const double v = u(z);
    return v != kNegInf && v > r && std::abs(z) < 1.0;
  };
  return reg;
}

QuadratureReport disk_integrate(const std::function<double(Complex)>& F,
                                const Region& region, const DiskOptions& opt) {
  DiskCtx ctx{&F, &region, &opt, 0};

  // uniform start, then forced splits around the singular hints
  std::vector<std::pair<Cell, CellInfo>> start;
  const int n0 = 16;
  const double h0 = 2.0 / n0;
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n0; ++j) {
      Cell c{-1.0 + i * h0, -1.0 + j * h0, h0};
      start.emplace_back(c, classify(ctx, c));
    }

  std::vector<Complex> hints = opt.singular_points;
  for (const auto& e : opt.exclusions) hints.push_back(e.center);
  const double h_hint = 2.0 / 512;
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(start.size()); ++i) {
    auto [c, k] = start[i];
    if ((k.kind == CellKind::out && k.allow == 0.0) || c.h <= h_hint) continue;
    bool near = false;
    for (const auto& p : hints)
      if (cell_contains(c, p)) near = true;
    if (!near) continue;
    const double h2 = 0.5 * c.h;
    start[i] = {Cell{c.x0, c.y0, h2}, CellInfo{CellKind::out, 0.0}};
    start[i].second = classify(ctx, start[i].first);
    for (const Cell& kc : {Cell{c.x0 + h2, c.y0, h2}, Cell{c.x0, c.y0 + h2, h2},
                           Cell{c.x0 + h2, c.y0 + h2, h2}})
      start.emplace_back(kc, classify(ctx, kc));
    --i;  // revisit the replaced slot
  }

  std::priority_queue<Leaf, std::vector<Leaf>, LeafWorse> heap;
  double total = 0.0, total_err = 0.0;
  std::int64_t leaves = 0;

  auto add_leaf = [&](const Cell& c, const CellInfo& info) {
    if (info.kind == CellKind::out && info.allow == 0.0) return;
    Leaf lf = make_leaf(ctx, c, info.kind);
    total += lf.value;
    total_err += lf.err;
    heap.push(std::move(lf));
    ++leaves;
  };

  for (const auto& [c, k] : start) add_leaf(c, k);

  double excl_bound = 0.0;
  for (const auto& e : opt.exclusions) excl_bound += e.mass_bound;

  double frozen = 0.0, frozen_err = 0.0;
  while (total_err + frozen_err > opt.tol && leaves < opt.max_cells &&
         !heap.empty()) {
    Leaf worst = heap.top();
    heap.pop();
    --leaves;
    total -= worst.value;
    total_err -= worst.err;
    if (worst.c.h < 1e-12) {  // machine-scale cell, keep with its error
      frozen += worst.value;
      frozen_err += worst.err;
      continue;
    }
    for (int i = 0; i < 4; ++i) add_leaf(worst.kids[i], worst.kid_info[i]);
  }

  QuadratureReport rep;
  rep.value = total + frozen;
  rep.est_error = total_err + frozen_err + excl_bound;
  rep.cells_or_nodes = ctx.evals;
  rep.converged = rep.est_error <= opt.tol;
  return rep;
}

// ---------------------------------------------------------------------------
// level-set tracing
// ---------------------------------------------------------------------------

std::optional<Complex> polish_onto_level(const ScalarField& u, double r,
                                         Complex z0, double tol,
                                         double min_gradient) {
  Complex z = z0;
  for (int it = 0; it < 12; ++it) {
    const double v = u.value(z) - r;
    if (!std::isfinite(v)) return std::nullopt;
    if (std::abs(v) <= tol) {
      const Complex g = u.gradient(z);
      if (std::abs(g) < min_gradient) return std::nullopt;
      return z;
    }
    const Complex g = u.gradient(z);
    const double n2 = std::norm(g);
    if (!(n2 > min_gradient * min_gradient)) return std::nullopt;
    z -= (v / n2) * g;
    if (std::abs(z) >= u.safe_radius) return std::nullopt;
  }
  return std::nullopt;
}

namespace {

// 1D root of u-r along a grid edge (endpoints straddle r).
Complex edge_crossing(const ScalarField& u, double r, Complex p0, Complex p1,
                      double v0, double v1) {
  bool below0 = v0 < r;
  (void)v1;
  for (int i = 0; i < 52; ++i) {
    const Complex m = 0.5 * (p0 + p1);
    const double vm = u.value(m);
    if ((vm < r) == below0)
      p0 = m;
    else
      p1 = m;
  }
  return 0.5 * (p0 + p1);
}

struct EdgeKey {
  int i, j;
  bool horizontal;
  bool operator<(const EdgeKey& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return horizontal < o.horizontal;
  }
};

}  // namespace

std::vector<PolylineContour> trace_levelset(const ScalarField& u, double r,
                                            const LevelsetOptions& opt) {
  if (!(r < 0) || !std::isfinite(r))
    throw std::domain_error("trace_levelset: level must be a finite r < 0");
  const int n = opt.grid_n;
  if (n < 16) throw std::domain_error("trace_levelset: grid_n too small");

  const double R = std::min(u.safe_radius * 0.999, 1.15);
  const double h = 2.0 * R / n;
  auto node = [&](int i, int j) {
    return Complex(-R + i * h, -R + j * h);
  };

  // grid samples; nodes outside the safe evaluation region masked with NaN
  std::vector<double> v((n + 1) * (n + 1));
  auto vat = [&](int i, int j) -> double& { return v[i * (n + 1) + j]; };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const Complex z = node(i, j);
      if (std::abs(z) >= u.safe_radius) {
        vat(i, j) = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      double val = u.value(z);
      if (val == kNegInf) val = -1e300;  // pole: keep orderable
      vat(i, j) = val;
    }

  // crossing points per global edge
  std::map<EdgeKey, Complex> crossings;
  auto crossing_at = [&](const EdgeKey& k) -> Complex {
    auto it = crossings.find(k);
    if (it != crossings.end()) return it->second;
    Complex p0, p1;
    double v0, v1;
    if (k.horizontal) {
      p0 = node(k.i, k.j);
      p1 = node(k.i + 1, k.j);
      v0 = vat(k.i, k.j);
      v1 = vat(k.i + 1, k.j);
    } else {
      p0 = node(k.i, k.j);
      p1 = node(k.i, k.j + 1);
      v0 = vat(k.i, k.j);
      v1 = vat(k.i, k.j + 1);
    }
    const Complex c = edge_crossing(u, r, p0, p1, v0, v1);
    crossings.emplace(k, c);
    return c;
  };

  // per-cell segments as pairs of edge keys
  std::map<EdgeKey, std::vector<std::pair<EdgeKey, std::pair<int, int>>>> links;
  std::set<std::pair<EdgeKey, EdgeKey>> segments;
  auto add_segment = [&](EdgeKey a, EdgeKey b, int ci, int cj) {
    if (b < a) std::swap(a, b);
    if (!segments.insert({a, b}).second) return;
    links[a].push_back({b, {ci, cj}});
    links[b].push_back({a, {ci, cj}});
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double c00 = vat(i, j), c10 = vat(i + 1, j), c11 = vat(i + 1, j + 1),
                   c01 = vat(i, j + 1);
      if (std::isnan(c00) || std::isnan(c10) || std::isnan(c11) ||
          std::isnan(c01))
        continue;  // masked cell
      const bool b00 = c00 < r, b10 = c10 < r, b11 = c11 < r, b01 = c01 < r;
      const int idx = (b00 ? 1 : 0) | (b10 ? 2 : 0) | (b11 ? 4 : 0) | (b01 ? 8 : 0);
      if (idx == 0 || idx == 15) continue;
      const EdgeKey bottom{i, j, true}, top{i, j + 1, true}, left{i, j, false},
          right{i + 1, j, false};
      switch (idx) {
        case 1: case 14: add_segment(bottom, left, i, j); break;
        case 2: case 13: add_segment(bottom, right, i, j); break;
        case 4: case 11: add_segment(right, top, i, j); break;
        case 8: case 7:  add_segment(top, left, i, j); break;
        case 3: case 12: add_segment(left, right, i, j); break;
        case 6: case 9:  add_segment(bottom, top, i, j); break;
        case 5: case 10: {
          // saddle: resolve with the center sample
          const Complex zc = node(i, j) + Complex(0.5 * h, 0.5 * h);
          double vc = u.value(zc);
          if (vc == kNegInf) vc = -1e300;
          const bool center_in = vc < r;
          const bool corner00_in = b00;
          if (center_in == corner00_in) {
            add_segment(left, top, i, j);
            add_segment(bottom, right, i, j);
          } else {
            add_segment(left, bottom, i, j);
            add_segment(top, right, i, j);
          }
          break;
        }
        default: break;
      }
    }

  // stitch segments into polylines
  auto same_key = [](const EdgeKey& a, const EdgeKey& b) {
    return !(a < b) && !(b < a);
  };
  std::set<std::pair<EdgeKey, EdgeKey>> used;
  std::vector<PolylineContour> out;
  for (const auto& seg : segments) {
    if (used.count(seg)) continue;
    std::deque<EdgeKey> chain = {seg.first, seg.second};
    used.insert(seg);
    bool closed = false;
    // extend at the tail until stuck or closed, then at the head
    for (int pass = 0; pass < 2 && !closed; ++pass) {
      while (true) {
        const EdgeKey tip = pass == 0 ? chain.back() : chain.front();
        bool extended = false;
        for (const auto& [nb, cc] : links[tip]) {
          (void)cc;
          const auto key =
              nb < tip ? std::make_pair(nb, tip) : std::make_pair(tip, nb);
          if (used.count(key)) continue;
          used.insert(key);
          if (pass == 0)
            chain.push_back(nb);
          else
            chain.push_front(nb);
          extended = true;
          break;
        }
        if (!extended) break;
        if (same_key(chain.front(), chain.back())) {
          closed = true;
          chain.pop_back();
          break;
        }
      }
    }

    PolylineContour pc;
    pc.closed = closed;
    for (const auto& k : chain) pc.vertices.push_back(crossing_at(k));
    if (pc.closed && pc.vertices.size() < 8)
      throw std::runtime_error(
          "trace_levelset: contour under-resolved at this grid_n");
    out.push_back(std::move(pc));
  }

  if (out.empty())
    throw std::runtime_error("trace_levelset: no level curve found");

  // regular-value guard along the traced curves
  for (const auto& pc : out)
    for (const auto& z : pc.vertices)
      if (std::abs(u.gradient(z)) < opt.min_gradient)
        throw std::runtime_error(
            "trace_levelset: degenerate level (|grad u| below guard); nudge r");

  // deterministic order: by first vertex
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.vertices.front().real() != b.vertices.front().real())
      return a.vertices.front().real() < b.vertices.front().real();
    return a.vertices.front().imag() < b.vertices.front().imag();
  });
  return out;
}

double contour_integrate(const PolylineContour& c,
                         const std::function<double(Complex)>& density) {
  if (c.vertices.size() < 2)
    throw std::domain_error("contour_integrate: need at least 2 vertices");
  double total = 0.0;
  const std::size_t m = c.vertices.size();
  const std::size_t nseg = c.closed ? m : m - 1;
  for (std::size_t k = 0; k < nseg; ++k) {
    const Complex a = c.vertices[k], b = c.vertices[(k + 1) % m];
    const double len = std::abs(b - a);
    const double d = density(0.5 * (a + b));
    if (!std::isfinite(d))
      throw std::domain_error("contour_integrate: non-finite density");
    total += len * d;
  }
  return total;
}

PolylineContour refine_contour(const PolylineContour& c, const ScalarField& u,
                               double r, const LevelsetOptions& opt) {
  PolylineContour out;
  out.closed = c.closed;
  const std::size_t m = c.vertices.size();
  const std::size_t nseg = c.closed ? m : m - 1;
  out.vertices.reserve(2 * m);
  for (std::size_t k = 0; k < nseg; ++k) {
    const Complex a = c.vertices[k], b = c.vertices[(k + 1) % m];
    out.vertices.push_back(a);
    const Complex mid = 0.5 * (a + b);
    auto polished =
        polish_onto_level(u, r, mid, opt.polish_tol, opt.min_gradient);
    out.vertices.push_back(polished.value_or(mid));
  }
  if (!c.closed) out.vertices.push_back(c.vertices.back());
  return out;
}

}  // namespace pshardy
