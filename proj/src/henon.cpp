#include "degdyn/henon.hpp"

#include <algorithm>
#include <cmath>

#include "degdyn/roots.hpp"
#include "degdyn/scaled_complex.hpp"

namespace degdyn::henon {

using num::ScaledComplex;

HenonMap HenonMap::single(Poly1C p, cdouble a) {
  if (p.degree() < 2) throw InputError("HenonMap: deg p must be >= 2");
  if (a == cdouble{}) throw InputError("HenonMap: a must be nonzero");
  HenonMap h;
  h.factors.push_back({std::move(p), a});
  return h;
}

long HenonMap::degree() const {
  long d = 1;
  for (const auto& f : factors) d *= f.p.degree();
  return d;
}

cdouble HenonMap::jacobian() const {
  cdouble j{1.0, 0.0};
  for (const auto& f : factors) j *= f.a;
  return j;
}

C2 HenonMap::apply(const C2& x) const {
  C2 y = x;
  for (const auto& f : factors) y = {f.p(y[0]) - f.a * y[1], y[0]};
  return y;
}

C2 HenonMap::apply_inverse(const C2& x) const {
  C2 y = x;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    y = {y[1], (it->p(y[1]) - y[0]) / it->a};
  return y;
}

namespace {

mapalg::GaussRat exact_coeff(cdouble c) {
  // doubles are dyadic rationals; the conversion is exact
  return {mpq_class(c.real()), mpq_class(c.imag())};
}

mapalg::MultiPoly poly_in(const Poly1C& p, const mapalg::MultiPoly& arg) {
  mapalg::MultiPoly acc(arg.nvars());
  for (std::size_t i = p.c.size(); i-- > 0;) {
    acc = acc * arg;
    acc = acc + mapalg::MultiPoly::constant(arg.nvars(), exact_coeff(p.c[i]));
  }
  return acc;
}

}  // namespace

mapalg::AffineMap HenonMap::forward_affine() const {
  using mapalg::MultiPoly;
  MultiPoly z = MultiPoly::variable(2, 0), w = MultiPoly::variable(2, 1);
  for (const auto& f : factors) {
    MultiPoly nz = poly_in(f.p, z) - w.scaled(exact_coeff(f.a));
    w = z;
    z = nz;
  }
  mapalg::AffineMap m;
  m.k = 2;
  m.comps = {mapalg::RatFunc::from_poly(z), mapalg::RatFunc::from_poly(w)};
  return m;
}

mapalg::AffineMap HenonMap::inverse_affine() const {
  using mapalg::MultiPoly;
  MultiPoly z = MultiPoly::variable(2, 0), w = MultiPoly::variable(2, 1);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    MultiPoly nw = (poly_in(it->p, w) - z).scaled(mapalg::inverse(exact_coeff(it->a)));
    z = w;
    w = nw;
  }
  mapalg::AffineMap m;
  m.k = 2;
  m.comps = {mapalg::RatFunc::from_poly(z), mapalg::RatFunc::from_poly(w)};
  return m;
}

double henon_escape_radius(const HenonMap& h) {
  double R = 1.0;
  for (const auto& f : h.factors) {
    double lead = std::abs(f.p.c.back());
    double s = 0.0;
    for (int i = 0; i < f.p.degree(); ++i) s += std::abs(f.p.c[(std::size_t)i]);
    R = std::max(R, (s + std::abs(f.a) + 2.0) / lead);
  }
  return R;
}

namespace {

struct ScaledC2 {
  ScaledComplex z, w;
  double log_norm() const {
    if (z.is_zero() && w.is_zero()) return -1e300;
    if (z.is_zero()) return w.log_abs();
    if (w.is_zero()) return z.log_abs();
    return std::max(z.log_abs(), w.log_abs());
  }
};

ScaledC2 apply_scaled(const HenonMap& h, ScaledC2 x, bool inverse) {
  if (!inverse) {
    for (const auto& f : h.factors) {
      ScaledComplex nz = num::eval_scaled(f.p.c, x.z) - ScaledComplex(f.a) * x.w;
      x.w = x.z;
      x.z = nz;
    }
  } else {
    for (auto it = h.factors.rbegin(); it != h.factors.rend(); ++it) {
      ScaledComplex nw =
          (num::eval_scaled(it->p.c, x.w) - x.z) / ScaledComplex(it->a);
      x.z = x.w;
      x.w = nw;
    }
  }
  return x;
}

GreenValue escape_rate(const HenonMap& h, const C2& x0, const GreenParams& params,
                       bool inverse) {
  long d = h.degree();
  if (d < 2) throw InputError("henon green: total degree must be >= 2");
  for (auto& c : x0)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InputError("henon green: NaN input");

  double R = params.escape_radius > 0 ? params.escape_radius : henon_escape_radius(h);
  // per-full-step additive defect once far out: leading coefficients and the
  // lower-order mass of every factor
  double B = 0.0;
  for (const auto& f : h.factors) {
    double s = std::abs(f.a);
    for (const auto& c : f.p.c) s += std::abs(c);
    B += std::abs(std::log(std::abs(f.p.c.back()))) + std::log(2.0 + s);
  }

  const double log_huge = 69.0;
  ScaledC2 x{ScaledComplex(x0[0]), ScaledComplex(x0[1])};
  int n = 0;
  while (n < params.max_iter && x.log_norm() <= log_huge) {
    x = apply_scaled(h, x, inverse);
    ++n;
  }

  GreenValue out;
  out.iters = n;
  double ln = x.log_norm();
  if (ln <= std::log(R) + 0.7) {
    out.bounded = true;
    out.value = 0.0;
    out.error = std::pow((double)d, -(double)n) * (std::log(R) + B);
    return out;
  }
  // two more steps after the huge threshold settle the increments
  for (int extra = 0; extra < 2; ++extra) {
    x = apply_scaled(h, x, inverse);
    ++n;
  }
  double dn = std::pow((double)d, -(double)n);
  out.iters = n;
  out.value = dn * x.log_norm();
  out.error = dn * B * (double)d / (double)(d - 1);
  return out;
}

}  // namespace

GreenValue green_plus(const HenonMap& h, const C2& x, const GreenParams& p) {
  return escape_rate(h, x, p, false);
}

GreenValue green_minus(const HenonMap& h, const C2& x, const GreenParams& p) {
  return escape_rate(h, x, p, true);
}

PointClass classify_point(const HenonMap& h, const C2& x, const GreenParams& p) {
  PointClass out;
  out.gplus = green_plus(h, x, p);
  out.gminus = green_minus(h, x, p);
  out.in_K_plus = out.gplus.value <= std::max(out.gplus.error, 1e-10);
  out.in_K_minus = out.gminus.value <= std::max(out.gminus.error, 1e-10);
  out.in_K = out.in_K_plus && out.in_K_minus;
  return out;
}

namespace {

HenonFixedPoint classify_multiplier(C2 pt, cdouble trace, cdouble det, int period) {
  HenonFixedPoint fp;
  fp.point = pt;
  fp.determinant = det;
  fp.period = period;
  cdouble disc = std::sqrt(trace * trace - 4.0 * det);
  fp.eigenvalues = {(trace + disc) / 2.0, (trace - disc) / 2.0};
  double a1 = std::abs(fp.eigenvalues[0]), a2 = std::abs(fp.eigenvalues[1]);
  if (a1 < a2) std::swap(a1, a2);
  if (a1 > 1.0 + 1e-9 && a2 < 1.0 - 1e-9)
    fp.type = HenonFixedPoint::Type::Saddle;
  else if (a1 > 1.0 + 1e-9)
    fp.type = HenonFixedPoint::Type::Repelling;
  else if (a1 < 1.0 - 1e-9)
    fp.type = HenonFixedPoint::Type::Attracting;
  else
    fp.type = HenonFixedPoint::Type::Indifferent;
  return fp;
}

std::array<std::array<cdouble, 2>, 2> jacobian_at(const HenonMap& h, C2 x) {
  std::array<std::array<cdouble, 2>, 2> J = {{{1.0, 0.0}, {0.0, 1.0}}};
  for (const auto& f : h.factors) {
    cdouble dp = f.p.derivative()(x[0]);
    std::array<std::array<cdouble, 2>, 2> F = {{{dp, -f.a}, {1.0, 0.0}}};
    std::array<std::array<cdouble, 2>, 2> R{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        R[i][j] = F[i][0] * J[0][j] + F[i][1] * J[1][j];
    J = R;
    x = {f.p(x[0]) - f.a * x[1], x[0]};
  }
  return J;
}

}  // namespace

std::vector<HenonFixedPoint> fixed_points(const HenonMap& h) {
  if (h.factors.size() != 1)
    return periodic_points_newton(h, 1);
  const auto& f = h.factors[0];
  // p(z) - a w = z, w = z  =>  p(z) - (a + 1) z = 0
  Poly1C eq = f.p;
  if (eq.c.size() < 2) eq.c.resize(2, cdouble{});
  eq.c[1] -= f.a + 1.0;
  eq.trim();
  std::vector<HenonFixedPoint> out;
  if (eq.degree() < 1) return out;
  for (const auto& z : num::roots(eq).roots) {
    cdouble trace = f.p.derivative()(z);
    out.push_back(classify_multiplier({z, z}, trace, f.a, 1));
  }
  return out;
}

std::vector<HenonFixedPoint> periodic_points_newton(const HenonMap& h, int n,
                                                    int* seeds_failed) {
  if (n < 1) throw InputError("periodic_points_newton: period must be >= 1");
  if (n > 32) throw InputError("periodic_points_newton: period guard (n <= 32)");
  double R = henon_escape_radius(h);
  int failed = 0;
  std::vector<HenonFixedPoint> found;
  auto push_if_new = [&](const C2& pt) {
    for (const auto& q : found)
      if (std::abs(q.point[0] - pt[0]) + std::abs(q.point[1] - pt[1]) < 1e-8)
        return false;
    return true;
  };

  for (int gi = 0; gi < 20; ++gi)
    for (int gj = 0; gj < 20; ++gj) {
      double re = -R + 2.0 * R * (gi + 0.5) / 20.0;
      double im = -R + 2.0 * R * (gj + 0.5) / 20.0;
      C2 x = {cdouble{re, im}, cdouble{re, im}};
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        // F(x) = h^n(x) - x, Newton step with the chain-rule Jacobian
        C2 y = x;
        std::array<std::array<cdouble, 2>, 2> J = {{{1.0, 0.0}, {0.0, 1.0}}};
        for (int s = 0; s < n; ++s) {
          auto Js = jacobian_at(h, y);
          std::array<std::array<cdouble, 2>, 2> R2{};
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              R2[i][j] = Js[i][0] * J[0][j] + Js[i][1] * J[1][j];
          J = R2;
          y = h.apply(y);
          if (std::abs(y[0]) + std::abs(y[1]) > 1e8) break;
        }
        cdouble F0 = y[0] - x[0], F1 = y[1] - x[1];
        J[0][0] -= 1.0;
        J[1][1] -= 1.0;
        cdouble det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (std::abs(det) < 1e-14 || std::abs(y[0]) + std::abs(y[1]) > 1e8) break;
        cdouble dz = (F0 * J[1][1] - F1 * J[0][1]) / det;
        cdouble dw = (F1 * J[0][0] - F0 * J[1][0]) / det;
        x = {x[0] - dz, x[1] - dw};
        if (std::abs(dz) + std::abs(dw) < 1e-13 * (1.0 + std::abs(x[0]) + std::abs(x[1]))) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        ++failed;
        continue;
      }
      C2 y = x;
      for (int s = 0; s < n; ++s) y = h.apply(y);
      if (std::abs(y[0] - x[0]) + std::abs(y[1] - x[1]) > 1e-9) {
        ++failed;
        continue;
      }
      if (!push_if_new(x)) continue;
      // multiplier spectrum of h^n at x
      std::array<std::array<cdouble, 2>, 2> J = {{{1.0, 0.0}, {0.0, 1.0}}};
      y = x;
      for (int s = 0; s < n; ++s) {
        auto Js = jacobian_at(h, y);
        std::array<std::array<cdouble, 2>, 2> R2{};
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            R2[i][j] = Js[i][0] * J[0][j] + Js[i][1] * J[1][j];
        J = R2;
        y = h.apply(y);
      }
      cdouble trace = J[0][0] + J[1][1];
      cdouble det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      found.push_back(classify_multiplier(x, trace, det, n));
    }
  if (seeds_failed) *seeds_failed = failed;
  return found;
}

}  // namespace degdyn::henon
