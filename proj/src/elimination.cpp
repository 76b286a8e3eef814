#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "degdyn/degrees.hpp"
#include "degdyn/random_stream.hpp"
#include "degdyn/roots.hpp"

namespace degdyn::degrees {

using num::cdouble;
using num::Poly1C;

namespace {

// Dense bivariate complex polynomial: a[i][j] z^i w^j.
struct PolyC2 {
  std::vector<std::vector<cdouble>> a;

  int deg_z() const { return (int)a.size() - 1; }
  int deg_w() const { return a.empty() ? -1 : (int)a[0].size() - 1; }

  static PolyC2 from_exact(const mapalg::MultiPoly& p) {
    PolyC2 r;
    int dz = std::max(p.degree_in(0), 0), dw = std::max(p.degree_in(1), 0);
    r.a.assign((std::size_t)dz + 1, std::vector<cdouble>((std::size_t)dw + 1, cdouble{}));
    for (const auto& [e, c] : p.terms()) r.a[e[0]][e[1]] = c.to_complex();
    return r;
  }

  cdouble eval(cdouble z, cdouble w) const {
    cdouble acc = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) {
      cdouble row = 0.0;
      for (std::size_t j = a[i].size(); j-- > 0;) row = row * w + a[i][j];
      acc = acc * z + row;
    }
    return acc;
  }

  // coefficient polynomials in z after substituting w.
  Poly1C at_w(cdouble w) const {
    std::vector<cdouble> c(a.size(), cdouble{});
    for (std::size_t i = 0; i < a.size(); ++i) {
      cdouble row = 0.0;
      for (std::size_t j = a[i].size(); j-- > 0;) row = row * w + a[i][j];
      c[i] = row;
    }
    return Poly1C(std::move(c));
  }

  PolyC2 d_z() const {
    PolyC2 r;
    if (deg_z() < 1) {
      r.a.assign(1, std::vector<cdouble>(a.empty() ? 1 : a[0].size(), cdouble{}));
      return r;
    }
    r.a.assign(a.size() - 1, {});
    for (std::size_t i = 1; i < a.size(); ++i) {
      r.a[i - 1] = a[i];
      for (auto& x : r.a[i - 1]) x *= (double)i;
    }
    return r;
  }

  PolyC2 d_w() const {
    PolyC2 r;
    r.a.assign(a.size(), std::vector<cdouble>(std::max<std::size_t>(a[0].size(), 2) - 1, cdouble{}));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 1; j < a[i].size(); ++j)
        r.a[i][j - 1] = (double)j * a[i][j];
    return r;
  }

  double coeff_scale(double zr, double wr) const {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j)
        s += std::abs(a[i][j]) * std::pow(zr, (double)i) * std::pow(wr, (double)j);
    return s;
  }
};

struct System {
  PolyC2 A, B;        // A = f1 - u, B = f2 - v
  PolyC2 Az, Aw, Bz, Bw;
};

// det of the Sylvester matrix in z of (A, B) at a fixed w.
cdouble sylvester_det_at(const System& S, cdouble w) {
  Poly1C p = S.A.at_w(w), q = S.B.at_w(w);
  int m = S.A.deg_z(), n = S.B.deg_z();
  // use nominal degrees: missing leading coefficients are exact zeros
  p.c.resize((std::size_t)m + 1, cdouble{});
  q.c.resize((std::size_t)n + 1, cdouble{});
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M(i, i + j) = p.c[(std::size_t)(m - j)];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M(n + i, i + j) = q.c[(std::size_t)(n - j)];
  return M.partialPivLu().determinant();
}

// Resultant in z as a polynomial in w, by evaluation at 2D+1 points on a
// random-radius circle and inverse DFT. Returns an empty polynomial when the
// resultant is identically ~0 (degenerate elimination).
Poly1C eliminate_z(const System& S, num::RandomStream& rs) {
  int D = S.A.deg_z() * S.B.deg_w() + S.B.deg_z() * S.A.deg_w();
  int M = 2 * D + 1;
  double rho = std::exp(rs.uniform(-0.25, 0.25));
  std::vector<cdouble> vals((std::size_t)M);
  double scale = 0.0;
  for (int j = 0; j < M; ++j) {
    double ang = 2.0 * M_PI * j / M;
    vals[(std::size_t)j] = sylvester_det_at(S, rho * cdouble{std::cos(ang), std::sin(ang)});
    scale = std::max(scale, std::abs(vals[(std::size_t)j]));
  }
  // identically-zero resultants only produce roundoff; gauge against the
  // determinant's coefficient magnitude (Hadamard-style row-norm product)
  double gauge = std::pow(S.A.coeff_scale(1.3, 1.3), (double)S.B.deg_z()) *
                 std::pow(S.B.coeff_scale(1.3, 1.3), (double)S.A.deg_z());
  if (scale <= 1e-12 * std::max(gauge, 1.0)) return Poly1C{};
  std::vector<cdouble> coeffs((std::size_t)D + 1, cdouble{});
  for (int k = 0; k <= D; ++k) {
    cdouble acc = 0.0;
    for (int j = 0; j < M; ++j) {
      double ang = -2.0 * M_PI * j * k / M;
      acc += vals[(std::size_t)j] * cdouble{std::cos(ang), std::sin(ang)};
    }
    coeffs[(std::size_t)k] = acc / ((double)M * std::pow(rho, (double)k));
  }
  // Drop interpolation noise.
  double cmax = 0.0;
  for (int k = 0; k <= D; ++k)
    cmax = std::max(cmax, std::abs(coeffs[(std::size_t)k]) * std::pow(rho, (double)k));
  for (auto& c : coeffs)
    if (std::abs(c) < 1e-9 * cmax) c = cdouble{};
  Poly1C R(std::move(coeffs));
  if (R.degree() < 0) return Poly1C{};
  return R;
}

struct Solution {
  cdouble z, w;
  long mult = 1;
};

// Common zeros of the system with Newton polish and residual verification.
// Multiplicities: in the z-free path they multiply (product structure); in
// the resultant path the order of w* as a resultant root is the sum of the
// intersection multiplicities of all solutions over w*, so the group total
// is max(order, number of simple branches).
std::vector<Solution> solve_system(const System& S, num::RandomStream& rs,
                                   bool with_multiplicity) {
  std::vector<Solution> sols;
  auto newton_polish = [&](cdouble& z, cdouble& w) {
    for (int it = 0; it < 8; ++it) {
      cdouble fa = S.A.eval(z, w), fb = S.B.eval(z, w);
      cdouble a11 = S.Az.eval(z, w), a12 = S.Aw.eval(z, w);
      cdouble a21 = S.Bz.eval(z, w), a22 = S.Bw.eval(z, w);
      cdouble det = a11 * a22 - a12 * a21;
      if (std::abs(det) < 1e-14) break;
      cdouble dz = (fa * a22 - fb * a12) / det;
      cdouble dw = (fb * a11 - fa * a21) / det;
      z -= dz;
      w -= dw;
      if (std::abs(dz) + std::abs(dw) < 1e-14 * (1.0 + std::abs(z) + std::abs(w))) break;
    }
  };
  auto verified = [&](cdouble z, cdouble w) {
    double sa = S.A.coeff_scale(std::max(1.0, std::abs(z)), std::max(1.0, std::abs(w)));
    double sb = S.B.coeff_scale(std::max(1.0, std::abs(z)), std::max(1.0, std::abs(w)));
    return std::abs(S.A.eval(z, w)) < 1e-7 * sa && std::abs(S.B.eval(z, w)) < 1e-7 * sb;
  };

  int dzA = S.A.deg_z(), dzB = S.B.deg_z();
  if (dzA == 0 && dzB == 0) return sols;

  // Distinct verified solutions over a fixed w, with their z-multiplicities.
  auto z_branches = [&](const PolyC2& P, const PolyC2& other, cdouble w) {
    std::vector<Solution> out;
    Poly1C pz = P.at_w(w);
    double lead_scale = 0.0;
    for (const auto& c : pz.c) lead_scale = std::max(lead_scale, std::abs(c));
    double gauge = P.coeff_scale(1.0, std::max(1.0, std::abs(w)));
    if (lead_scale <= 1e-12 * std::max(gauge, 1.0))
      throw NumericalError(
          "degenerate system: a whole z-line solves it (positive-dimensional locus)");
    while (!pz.c.empty() && std::abs(pz.c.back()) < 1e-10 * lead_scale) pz.c.pop_back();
    if (pz.degree() < 1) return out;
    num::RootSet zr = num::roots(pz);
    for (std::size_t i = 0; i < zr.roots.size(); ++i) {
      cdouble z = zr.roots[i], wc = w;
      double so = other.coeff_scale(std::max(1.0, std::abs(z)), std::max(1.0, std::abs(wc)));
      if (std::abs(other.eval(z, wc)) > 1e-4 * so) continue;
      newton_polish(z, wc);
      if (verified(z, wc)) out.push_back({z, wc, zr.multiplicity[i]});
    }
    return out;
  };

  if (dzA == 0 || dzB == 0) {
    const PolyC2& zfree = dzA == 0 ? S.A : S.B;
    const PolyC2& zdep = dzA == 0 ? S.B : S.A;
    Poly1C pw(zfree.a[0]);
    if (pw.degree() < 1) return sols;
    num::RootSet wr = num::roots(pw);
    for (std::size_t i = 0; i < wr.roots.size(); ++i)
      for (Solution s : z_branches(zdep, zfree, wr.roots[i])) {
        s.mult = with_multiplicity ? s.mult * wr.multiplicity[i] : 1;
        sols.push_back(s);
      }
    return sols;
  }

  Poly1C R = eliminate_z(S, rs);
  if (R.is_zero()) throw NumericalError("degenerate elimination: resultant vanishes");
  if (R.degree() < 1) return sols;  // constant nonzero resultant: no affine solutions
  num::RootSet wr = num::roots(R);
  for (std::size_t i = 0; i < wr.roots.size(); ++i) {
    auto group = z_branches(S.A, S.B, wr.roots[i]);
    if (group.empty()) continue;
    if (with_multiplicity) {
      long simple_total = 0;
      for (const auto& s : group) simple_total += s.mult;
      long group_total = std::max<long>(wr.multiplicity[i], simple_total);
      // attribute the excess to the first branch
      group[0].mult += group_total - simple_total;
    } else {
      for (auto& s : group) s.mult = 1;
    }
    sols.insert(sols.end(), group.begin(), group.end());
  }
  return sols;
}

System build_system(const mapalg::AffineMap& f, cdouble u, cdouble v) {
  if (f.k != 2) throw InputError("elimination pipeline needs k = 2");
  if (!f.is_polynomial())
    throw InputError("elimination pipeline needs polynomial components");
  System S;
  S.A = PolyC2::from_exact(f.comps[0].num.scaled(
      mapalg::inverse(f.comps[0].den.leading_coeff())));
  S.B = PolyC2::from_exact(f.comps[1].num.scaled(
      mapalg::inverse(f.comps[1].den.leading_coeff())));
  S.A.a[0][0] -= u;
  S.B.a[0][0] -= v;
  auto almost_zero = [](const PolyC2& P) {
    double s = 0.0;
    for (const auto& row : P.a)
      for (const auto& c : row) s += std::abs(c);
    return s < 1e-14;
  };
  if (almost_zero(S.A) || almost_zero(S.B))
    throw NumericalError("degenerate system: a component is identically zero");
  S.Az = S.A.d_z();
  S.Aw = S.A.d_w();
  S.Bz = S.B.d_z();
  S.Bw = S.B.d_w();
  return S;
}

long count_distinct(const std::vector<Solution>& sols) {
  std::vector<char> used(sols.size(), 0);
  long count = 0;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    if (used[i]) continue;
    ++count;
    used[i] = 1;
    for (std::size_t j = i + 1; j < sols.size(); ++j)
      if (!used[j] && std::abs(sols[j].z - sols[i].z) + std::abs(sols[j].w - sols[i].w) < 1e-6)
        used[j] = 1;
  }
  return count;
}

}  // namespace

long topological_degree(const mapalg::AffineMap& f, int trials, std::uint64_t seed) {
  if (jacobian_det(f).num.is_zero())
    throw InputError("topological_degree: map is not dominant");
  std::vector<long> counts;
  int degenerate_retries = 0;
  for (int round = 0; round < 2; ++round) {
    counts.clear();
    for (int t = 0; t < trials; ++t) {
      num::RandomStream rs(seed, (std::uint64_t)(round * 1000 + t));
      long c = -1;
      while (c < 0) {
        cdouble u = 2.0 * rs.unit_disk(), v = 2.0 * rs.unit_disk();
        try {
          System S = build_system(f, u, v);
          auto sols = solve_system(S, rs, false);
          c = count_distinct(sols);
        } catch (const NumericalError&) {
          if (++degenerate_retries >= 5)
            throw NumericalError("topological_degree: degenerate elimination after 5 retries");
        }
      }
      counts.push_back(c);
    }
    bool agree = std::all_of(counts.begin(), counts.end(),
                             [&](long c) { return c == counts[0]; });
    if (agree) return counts[0];
  }
  std::string msg = "topological_degree: trials disagree after retry; counts =";
  for (long c : counts) msg += " " + std::to_string(c);
  throw NumericalError(msg);
}

namespace {

mapalg::AffineMap affine_iterate(const mapalg::AffineMap& f, int n) {
  if (!f.is_polynomial())
    throw InputError("fixed_point_count: polynomial components required");
  std::vector<mapalg::MultiPoly> cur, base;
  for (const auto& c : f.comps)
    base.push_back(c.num.scaled(mapalg::inverse(c.den.leading_coeff())));
  cur = base;
  for (int i = 1; i < n; ++i) {
    std::vector<mapalg::MultiPoly> nxt;
    for (const auto& c : base) nxt.push_back(c.substitute(cur));
    cur = std::move(nxt);
    long deg = 0;
    for (const auto& c : cur) deg = std::max(deg, (long)c.total_degree());
    if (deg > 4096) throw InputError("fixed_point_count: iterate degree exceeds guard");
  }
  mapalg::AffineMap g;
  g.k = f.k;
  for (auto& c : cur) g.comps.push_back(mapalg::RatFunc::from_poly(std::move(c)));
  return g;
}

}  // namespace

FixedPointCount fixed_point_count(const mapalg::AffineMap& f, int n,
                                  std::uint64_t seed, bool extends_holomorphically) {
  if (n < 1) throw InputError("fixed_point_count: period must be >= 1");
  mapalg::AffineMap fn = affine_iterate(f, n);
  // subtract the identity
  fn.comps[0] = mapalg::RatFunc::from_poly(
      fn.comps[0].num - mapalg::MultiPoly::variable(2, 0));
  fn.comps[1] = mapalg::RatFunc::from_poly(
      fn.comps[1].num - mapalg::MultiPoly::variable(2, 1));

  num::RandomStream rs(seed, 0xf1);
  System S = build_system(fn, cdouble{}, cdouble{});
  auto sols = solve_system(S, rs, true);

  FixedPointCount out;
  out.period = n;
  out.affine_count = 0;
  for (const auto& s : sols) out.affine_count += s.mult;
  if (extends_holomorphically) {
    long d = 0;
    for (const auto& c : f.comps) d = std::max<long>(d, c.num.total_degree());
    long long total = 0, p = 1;
    for (int j = 0; j <= f.k; ++j) {
      total += p;
      for (int t = 0; t < n; ++t) p *= d;
    }
    out.lefschetz_total = total;
  }
  return out;
}

}  // namespace degdyn::degrees
