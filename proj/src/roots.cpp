#include "degdyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "degdyn/map_parser.hpp"

namespace degdyn::num {

Poly1C Poly1C::from_exact(const mapalg::MultiPoly& p) {
  if (p.nvars() > 1) throw std::invalid_argument("from_exact: univariate only");
  std::vector<cdouble> c((std::size_t)std::max(p.total_degree(), 0) + 1, cdouble{});
  for (const auto& [e, q] : p.terms()) c[p.nvars() ? e[0] : 0] = q.to_complex();
  return Poly1C(std::move(c));
}

Poly1C Poly1C::parse(const std::string& text) {
  return from_exact(mapalg::parse_poly1_exact(text));
}

Poly1C operator+(const Poly1C& a, const Poly1C& b) {
  std::vector<cdouble> c(std::max(a.c.size(), b.c.size()), cdouble{});
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
  return Poly1C(std::move(c));
}

Poly1C operator-(const Poly1C& a, const Poly1C& b) {
  std::vector<cdouble> c(std::max(a.c.size(), b.c.size()), cdouble{});
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
  return Poly1C(std::move(c));
}

Poly1C operator*(const Poly1C& a, const Poly1C& b) {
  if (a.is_zero() || b.is_zero()) return Poly1C{};
  std::vector<cdouble> c(a.c.size() + b.c.size() - 1, cdouble{});
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return Poly1C(std::move(c));
}

Poly1C Poly1C::scaled(cdouble s) const {
  Poly1C r = *this;
  for (auto& x : r.c) x *= s;
  r.trim();
  return r;
}

double Poly1C::cauchy_bound() const {
  if (c.size() <= 1) return 1.0;
  double lead_abs = std::abs(c.back());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) s += std::abs(c[i]);
  return 1.0 + s / lead_abs;
}

std::string Poly1C::str(const std::string& var) const {
  if (c.empty()) return "0";
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == cdouble{}) continue;
    if (!s.empty()) s += " + ";
    s += "(" + std::to_string(c[i].real()) + (c[i].imag() >= 0 ? "+" : "") +
         std::to_string(c[i].imag()) + "i)";
    if (i > 0) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s;
}

double resultant_gauge(const Poly1C& p, const Poly1C& q) {
  int m = p.degree(), n = q.degree();
  if (m < 0 || n < 0) return 0.0;
  if (m == 0 || n == 0) return 1.0;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) S(i, i + j) = p.c[(std::size_t)(m - j)];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) S(n + i, i + j) = q.c[(std::size_t)(n - j)];
  cdouble det = S.partialPivLu().determinant();
  double scale = std::pow(std::abs(p.c.back()), n) * std::pow(std::abs(q.c.back()), m);
  double root_gauge = std::pow(std::max(p.cauchy_bound(), q.cauchy_bound()), m * n);
  return std::abs(det) / (scale * root_gauge);
}

RatMap1C RatMap1C::from_poly(Poly1C p) {
  RatMap1C r;
  r.P = std::move(p);
  r.Q = Poly1C({cdouble{1.0, 0.0}});
  return r;
}

RatMap1C RatMap1C::make(Poly1C p, Poly1C q) {
  if (q.is_zero()) throw std::invalid_argument("RatMap1C: zero denominator");
  if (resultant_gauge(p, q) < 1e-12)
    throw std::invalid_argument("RatMap1C: P and Q share a root (not reduced)");
  RatMap1C r;
  r.P = std::move(p);
  r.Q = std::move(q);
  return r;
}

std::vector<cdouble> RootSet::expanded() const {
  std::vector<cdouble> all;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (int k = 0; k < multiplicity[i]; ++k) all.push_back(roots[i]);
  return all;
}

void cluster_points(const std::vector<cdouble>& pts, double radius,
                    std::vector<cdouble>& centers, std::vector<int>& mult) {
  centers.clear();
  mult.clear();
  std::vector<char> used(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    cdouble sum = pts[i];
    int count = 1;
    used[i] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      cdouble ctr = sum / (double)count;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(pts[j] - ctr) <= radius) {
          used[j] = 1;
          sum += pts[j];
          ++count;
          grew = true;
        }
      }
    }
    centers.push_back(sum / (double)count);
    mult.push_back(count);
  }
}

std::vector<cdouble> aberth_functional(int degree, double radius,
                                       const std::function<cdouble(cdouble)>& newton_ratio,
                                       bool* converged, int max_sweeps) {
  std::vector<cdouble> z((std::size_t)degree);
  // Equal angles with an irrational phase and a mild radial stagger so no
  // initial point sits on a symmetry axis of the polynomial.
  const double phase = 0.376412305;
  for (int i = 0; i < degree; ++i) {
    double a = 2.0 * M_PI * ((double)i / degree + phase);
    double r = radius * (1.0 + 0.05 * std::cos(7.0 * a));
    z[(std::size_t)i] = cdouble{r * std::cos(a), r * std::sin(a)};
  }
  bool ok = false;
  double tol = 1e-13;
  for (int sweep = 0; sweep < max_sweeps && !ok; ++sweep) {
    double worst = 0.0;
    for (int i = 0; i < degree; ++i) {
      cdouble zi = z[(std::size_t)i];
      cdouble r = newton_ratio(zi);
      if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
        z[(std::size_t)i] = zi * 1.000001 + cdouble{1e-9, 1e-9};
        worst = 1.0;
        continue;
      }
      cdouble s = 0.0;
      for (int j = 0; j < degree; ++j)
        if (j != i) {
          cdouble d = zi - z[(std::size_t)j];
          if (std::abs(d) < 1e-300) d = cdouble{1e-300, 0.0};
          s += 1.0 / d;
        }
      cdouble denom = 1.0 - r * s;
      cdouble w = std::abs(denom) < 1e-300 ? r : r / denom;
      z[(std::size_t)i] = zi - w;
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(zi)));
    }
    ok = worst < tol;
  }
  if (converged) *converged = ok;
  return z;
}

RootSet roots(const Poly1C& p_in) {
  Poly1C p = p_in;
  p.trim();
  if (p.degree() < 1) throw std::invalid_argument("roots: degree must be >= 1");

  // Exact zero roots deflate cheaply and keep the iteration well scaled.
  int zero_mult = 0;
  while (!p.c.empty() && p.c.front() == cdouble{}) {
    p.c.erase(p.c.begin());
    ++zero_mult;
  }

  RootSet out;
  std::vector<cdouble> pts;
  double bound = p_in.cauchy_bound();
  if (p.degree() >= 1) {
    auto ratio = [&](cdouble z) -> cdouble {
      cdouble v = 0.0, d = 0.0;
      for (std::size_t i = p.c.size(); i-- > 0;) {
        d = d * z + v;
        v = v * z + p.c[i];
      }
      if (d == cdouble{}) return cdouble{1e-300, 0.0};
      return v / d;
    };
    bool conv = false;
    pts = aberth_functional(p.degree(), bound, ratio, &conv, 200);
    out.converged = conv;
    for (auto& z : pts)
      for (int it = 0; it < 3; ++it) {
        cdouble r = ratio(z);
        if (std::abs(r) < 1e30) z -= r;
      }
  }
  for (int i = 0; i < zero_mult; ++i) pts.push_back(cdouble{});

  cluster_points(pts, 1e-6 * bound, out.roots, out.multiplicity);
  out.max_residual = 0.0;
  for (const auto& z : out.roots)
    out.max_residual = std::max(out.max_residual, std::abs(p_in(z)));
  return out;
}

}  // namespace degdyn::num
