#include "degdyn/maps.hpp"

#include <algorithm>
#include <stdexcept>

namespace degdyn::mapalg {

RatFunc::RatFunc(MultiPoly n, MultiPoly d) {
  if (d.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
  if (n.is_zero()) {
    num = MultiPoly(n.nvars());
    den = MultiPoly::constant(n.nvars(), GaussRat(1));
    return;
  }
  MultiPoly g = poly_gcd(n, d);
  if (!g.is_constant()) {
    n = *try_divide(n, g);
    d = *try_divide(d, g);
  }
  GaussRat lc = inverse(d.leading_coeff());
  num = n.scaled(lc);
  den = d.scaled(lc);
}

RatFunc RatFunc::from_poly(MultiPoly p) {
  RatFunc r;
  r.den = MultiPoly::constant(p.nvars(), GaussRat(1));
  r.num = std::move(p);
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
}
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num * b.num, a.den * b.den);
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(a.num * b.den, a.den * b.num);
}
RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num = -r.num;
  return r;
}
RatFunc RatFunc::pow(unsigned e) const {
  RatFunc r = from_poly(MultiPoly::constant(nvars(), GaussRat(1)));
  RatFunc base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

bool AffineMap::is_polynomial() const {
  return std::all_of(comps.begin(), comps.end(),
                     [](const RatFunc& c) { return c.is_polynomial(); });
}

ProjMap ProjMap::make(int dim, std::vector<MultiPoly> comps) {
  if ((int)comps.size() != dim + 1)
    throw std::invalid_argument("ProjMap: need k+1 components");
  if (std::all_of(comps.begin(), comps.end(),
                  [](const MultiPoly& p) { return p.is_zero(); }))
    throw std::invalid_argument("ProjMap: zero map");
  reduce_common_factor(comps);
  int d = -1;
  for (const auto& c : comps) {
    if (c.is_zero()) continue;
    if (!c.is_homogeneous())
      throw std::invalid_argument("ProjMap: inhomogeneous component");
    if (d < 0) d = c.total_degree();
    if (c.total_degree() != d)
      throw std::invalid_argument("ProjMap: mixed component degrees");
  }
  ProjMap m;
  m.dim = dim;
  m.comps = std::move(comps);
  m.degree = d;
  return m;
}

static bool is_bihomogeneous(const MultiPoly& p, long& dz, long& dw) {
  dz = dw = -1;
  for (const auto& [e, c] : p.terms()) {
    long a = (long)e[0] + e[1], b = (long)e[2] + e[3];
    if (dz < 0) { dz = a; dw = b; }
    if (a != dz || b != dw) return false;
  }
  return true;
}

BiProjMap BiProjMap::make(std::array<MultiPoly, 2> f, std::array<MultiPoly, 2> g) {
  auto reduce_pair = [](std::array<MultiPoly, 2>& pr) {
    if (pr[0].is_zero() && pr[1].is_zero())
      throw std::invalid_argument("BiProjMap: zero component pair");
    std::vector<MultiPoly> v = {pr[0], pr[1]};
    reduce_common_factor(v);
    pr[0] = std::move(v[0]);
    pr[1] = std::move(v[1]);
  };
  reduce_pair(f);
  reduce_pair(g);
  for (const auto* pr : {&f, &g})
    for (const auto& p : *pr) {
      long a, b;
      if (!p.is_zero() && !is_bihomogeneous(p, a, b))
        throw std::invalid_argument("BiProjMap: component not bihomogeneous");
    }
  BiProjMap m;
  m.f = std::move(f);
  m.g = std::move(g);
  return m;
}

std::array<std::array<long, 2>, 2> BiProjMap::bidegree() const {
  auto pair_deg = [](const std::array<MultiPoly, 2>& pr) -> std::array<long, 2> {
    for (const auto& p : pr)
      if (!p.is_zero()) {
        long a, b;
        is_bihomogeneous(p, a, b);
        return {a, b};
      }
    return {0, 0};
  };
  return {pair_deg(f), pair_deg(g)};
}

// Affine f_i = P_i/Q_i on C^k -> [N_1 : ... : N_k : D] on P^k with
// coordinates (x_1..x_k, t), z_i = x_i/t.
ProjMap homogenize_proj(const AffineMap& f) {
  int k = f.k;
  MultiPoly den = MultiPoly::constant(k, GaussRat(1));
  for (const auto& c : f.comps) den = poly_lcm(den, c.den);
  std::vector<MultiPoly> nums;
  for (const auto& c : f.comps) nums.push_back(c.num * *try_divide(den, c.den));

  int deg = den.total_degree();
  for (const auto& n : nums) deg = std::max(deg, n.total_degree());
  std::vector<MultiPoly> comps;
  for (auto& n : nums) comps.push_back(n.homogenized(deg));
  comps.push_back(den.homogenized(deg));
  return ProjMap::make(k, std::move(comps));
}

namespace {

// Bihomogenization of a polynomial p(z,w) into 4 vars (z0,z1,w0,w1),
// z = z0/z1, w = w0/w1, cleared to bidegree (deg_z p, deg_w p).
MultiPoly bihom(const MultiPoly& p) {
  int dz = std::max(p.degree_in(0), 0), dw = std::max(p.degree_in(1), 0);
  MultiPoly r(4);
  for (const auto& [e, c] : p.terms()) {
    ExpVec x(4, 0);
    x[0] = e[0];
    x[1] = (std::uint32_t)(dz - e[0]);
    x[2] = e[1];
    x[3] = (std::uint32_t)(dw - e[1]);
    r.add_term(x, c);
  }
  return r;
}

// Bring num/den to a common bidegree pair representing num/den on P^1 x P^1.
std::array<MultiPoly, 2> bihom_pair(const RatFunc& c) {
  int dzn = std::max(c.num.degree_in(0), 0), dzd = std::max(c.den.degree_in(0), 0);
  int dwn = std::max(c.num.degree_in(1), 0), dwd = std::max(c.den.degree_in(1), 0);
  int dz = std::max(dzn, dzd), dw = std::max(dwn, dwd);
  auto pad = [&](const MultiPoly& p, int dz0, int dw0) {
    MultiPoly q = bihom(p);
    ExpVec e(4, 0);
    e[1] = (std::uint32_t)(dz - dz0);
    e[3] = (std::uint32_t)(dw - dw0);
    return q * MultiPoly::monomial(4, e, GaussRat(1));
  };
  return {pad(c.num, dzn, dwn), pad(c.den, dzd, dwd)};
}

}  // namespace

BiProjMap homogenize_biproj(const AffineMap& f) {
  if (f.k != 2) throw std::invalid_argument("biproj model needs k = 2");
  return BiProjMap::make(bihom_pair(f.comps[0]), bihom_pair(f.comps[1]));
}

ProjMap compose(const ProjMap& f, const ProjMap& g) {
  if (f.dim != g.dim) throw std::invalid_argument("compose: dimension mismatch");
  std::vector<MultiPoly> comps;
  for (const auto& c : f.comps) comps.push_back(c.substitute(g.comps));
  return ProjMap::make(f.dim, std::move(comps));
}

BiProjMap compose(const BiProjMap& f, const BiProjMap& g) {
  std::vector<MultiPoly> args = {g.f[0], g.f[1], g.g[0], g.g[1]};
  auto sub = [&](const MultiPoly& p) { return p.substitute(args); };
  return BiProjMap::make({sub(f.f[0]), sub(f.f[1])}, {sub(f.g[0]), sub(f.g[1])});
}

ProjMap proj_identity(int dim) {
  std::vector<MultiPoly> comps;
  for (int i = 0; i <= dim; ++i) comps.push_back(MultiPoly::variable(dim + 1, i));
  return ProjMap::make(dim, std::move(comps));
}

BiProjMap biproj_identity() {
  return BiProjMap::make({MultiPoly::variable(4, 0), MultiPoly::variable(4, 1)},
                         {MultiPoly::variable(4, 2), MultiPoly::variable(4, 3)});
}

RatFunc jacobian_det(const AffineMap& f) {
  int k = f.k;
  std::vector<std::vector<RatFunc>> m(k, std::vector<RatFunc>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      // d/dz_j (num/den) = (num' den - num den')/den^2
      const auto& c = f.comps[i];
      m[i][j] = RatFunc(c.num.derivative(j) * c.den - c.num * c.den.derivative(j),
                        c.den * c.den);
    }
  // Cofactor expansion; k stays small (<= 4) at desk scale.
  std::function<RatFunc(std::vector<int>, std::vector<int>)> det =
      [&](std::vector<int> rows, std::vector<int> cols) -> RatFunc {
    if (rows.size() == 1) return m[rows[0]][cols[0]];
    RatFunc acc = RatFunc::from_poly(MultiPoly(k));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      std::vector<int> r2(rows.begin() + 1, rows.end());
      std::vector<int> c2 = cols;
      c2.erase(c2.begin() + (long)j);
      RatFunc sub = m[rows[0]][cols[j]] * det(r2, c2);
      acc = (j % 2 == 0) ? acc + sub : acc - sub;
    }
    return acc;
  };
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  return det(idx, idx);
}

namespace {

// exact partial-derivative determinant at a sample point; true iff nonzero
bool jacobian_nonzero_at(const std::vector<RatFunc>& comps, int k,
                         const std::vector<GaussRat>& pt) {
  std::vector<std::vector<GaussRat>> J((std::size_t)k, std::vector<GaussRat>((std::size_t)k));
  for (int i = 0; i < k; ++i) {
    const auto& c = comps[(std::size_t)i];
    GaussRat den = c.den.eval(std::span<const GaussRat>(pt));
    if (den.is_zero()) return false;  // caller retries at another point
    for (int j = 0; j < k; ++j) {
      GaussRat num = (c.num.derivative(j) * c.den - c.num * c.den.derivative(j))
                         .eval(std::span<const GaussRat>(pt));
      J[(std::size_t)i][(std::size_t)j] = num / (den * den);
    }
  }
  // Gaussian elimination over Q(i)
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int row = col; row < k; ++row)
      if (!J[(std::size_t)row][(std::size_t)col].is_zero()) {
        piv = row;
        break;
      }
    if (piv < 0) return false;
    std::swap(J[(std::size_t)col], J[(std::size_t)piv]);
    for (int row = col + 1; row < k; ++row) {
      if (J[(std::size_t)row][(std::size_t)col].is_zero()) continue;
      GaussRat f = J[(std::size_t)row][(std::size_t)col] / J[(std::size_t)col][(std::size_t)col];
      for (int c2 = col; c2 < k; ++c2)
        J[(std::size_t)row][(std::size_t)c2] -= f * J[(std::size_t)col][(std::size_t)c2];
    }
  }
  return true;
}

bool dominant_probe(const std::vector<RatFunc>& comps, int k) {
  static const long pts[3][6] = {{2, 3, 5, 7, 11, 13},
                                 {-3, 5, -7, 2, 9, -4},
                                 {7, -2, 3, -5, 8, 6}};
  static const long dens[3][6] = {{3, 2, 7, 4, 5, 9},
                                  {4, 3, 2, 9, 7, 5},
                                  {5, 9, 4, 3, 2, 7}};
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<GaussRat> pt;
    for (int i = 0; i < k; ++i) {
      mpq_class q(pts[trial][i % 6], dens[trial][i % 6]);
      q.canonicalize();
      pt.emplace_back(q);
    }
    if (jacobian_nonzero_at(comps, k, pt)) return true;
  }
  return false;
}

}  // namespace

bool is_dominant(const AffineMap& f) { return dominant_probe(f.comps, f.k); }

bool is_dominant(const ProjMap& f) {
  // affine chart over the last nonzero component
  int chart = -1;
  for (int i = f.dim; i >= 0 && chart < 0; --i)
    if (!f.comps[(std::size_t)i].is_zero()) chart = i;
  std::vector<RatFunc> comps;
  for (int i = 0; i <= f.dim; ++i) {
    if (i == chart) continue;
    comps.push_back(RatFunc(f.comps[(std::size_t)i].dehomogenized(chart),
                            f.comps[(std::size_t)chart].dehomogenized(chart)));
  }
  return dominant_probe(comps, f.dim);
}

bool is_dominant(const BiProjMap& f) {
  // chart z1 = w1 = 1: variables (z0, w0) at indices 0 and 2
  auto chartify = [](const MultiPoly& p) {
    return p.dehomogenized(3).dehomogenized(1);
  };
  std::vector<RatFunc> comps = {RatFunc(chartify(f.f[0]), chartify(f.f[1])),
                                RatFunc(chartify(f.g[0]), chartify(f.g[1]))};
  return dominant_probe(comps, 2);
}

std::vector<std::string> affine_var_names(int k) {
  if (k == 1) return {"z"};
  if (k == 2) return {"z", "w"};
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back("z" + std::to_string(i));
  return names;
}

std::vector<std::string> proj_var_names(int k) {
  std::vector<std::string> names;
  for (int i = 0; i <= k; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::string to_string(const ProjMap& m) {
  // Affine-friendly names in low dimension: (z, w, t) on P^2.
  std::vector<std::string> names;
  if (m.dim == 2)
    names = {"z", "w", "t"};
  else if (m.dim == 3)
    names = {"z1", "z2", "z3", "t"};
  else
    names = proj_var_names(m.dim);
  std::string s = "[";
  for (int i = 0; i <= m.dim; ++i) {
    if (i) s += " : ";
    s += m.comps[i].str(names);
  }
  return s + "]";
}

std::string to_string(const BiProjMap& m) {
  std::vector<std::string> names = {"z0", "z1", "w0", "w1"};
  return "[" + m.f[0].str(names) + " : " + m.f[1].str(names) + "] x [" +
         m.g[0].str(names) + " : " + m.g[1].str(names) + "]";
}

std::string to_string(const AffineMap& m) {
  auto names = affine_var_names(m.k);
  std::string s = "(";
  for (int i = 0; i < m.k; ++i) {
    if (i) s += ", ";
    s += m.comps[i].num.str(names);
    if (!m.comps[i].is_polynomial()) s += " / (" + m.comps[i].den.str(names) + ")";
    else if (m.comps[i].den.leading_coeff() != GaussRat(1))
      s += " / " + to_string(m.comps[i].den.leading_coeff());
  }
  return s + ")";
}

}  // namespace degdyn::mapalg
