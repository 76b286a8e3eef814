#include <algorithm>
#include <cmath>

#include "degdyn/henon.hpp"

namespace degdyn::henon {

using mapalg::GaussRat;
using mapalg::MultiPoly;

namespace {

bool is_monomial(const MultiPoly& p) { return p.term_count() == 1; }

// Components of the common zero set of a family of monomials on P^{k-1}:
// minimal hitting sets of the variable supports give coordinate subspaces.
std::vector<InfinityComponent> monomial_components(
    const std::vector<MultiPoly>& forms, int nvars) {
  std::vector<std::vector<int>> supports;
  for (const auto& f : forms) {
    std::vector<int> s;
    const auto& e = f.terms().begin()->first;
    for (int i = 0; i < nvars; ++i)
      if (e[(std::size_t)i] > 0) s.push_back(i);
    supports.push_back(s);
  }
  std::vector<std::vector<int>> hitting;
  for (unsigned mask = 1; mask < (1u << nvars); ++mask) {
    auto hits_all = [&](unsigned m) {
      for (const auto& s : supports) {
        bool hit = std::any_of(s.begin(), s.end(), [&](int i) { return m >> i & 1; });
        if (!hit) return false;
      }
      return true;
    };
    if (!hits_all(mask)) continue;
    bool minimal = true;
    for (unsigned sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask)
      if (hits_all(sub)) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    std::vector<int> v;
    for (int i = 0; i < nvars; ++i)
      if (mask >> i & 1) v.push_back(i);
    if ((int)v.size() <= nvars - 1) hitting.push_back(v);
  }
  std::vector<InfinityComponent> out;
  for (const auto& v : hitting) {
    InfinityComponent c;
    c.vanishing = v;
    c.dim = (nvars - 1) - (int)v.size();
    out.push_back(c);
  }
  return out;
}

std::vector<GaussRat> coordinate_point(int nvars, int free_var) {
  std::vector<GaussRat> pt((std::size_t)nvars, GaussRat(0));
  pt[(std::size_t)free_var] = GaussRat(1);
  return pt;
}

bool vanishes_at(const MultiPoly& f, const std::vector<GaussRat>& pt) {
  return f.eval(std::span<const GaussRat>(pt)).is_zero();
}

}  // namespace

int IndeterminacySet::dim() const {
  int d = points.empty() ? -1 : 0;
  for (const auto& c : components) d = std::max(d, c.dim);
  return d;
}

namespace {

void verify_points(const mapalg::ProjMap& F, const IndeterminacySet& s) {
  for (const auto& pt : s.points)
    for (const auto& comp : F.comps)
      if (!comp.eval(std::span<const GaussRat>(pt)).is_zero())
        throw std::logic_error("indeterminacy_points: candidate fails exact check");
}

}  // namespace

IndeterminacySet indeterminacy_points(const mapalg::ProjMap& F) {
  int k = F.dim;
  int n = k;  // coordinates on the hyperplane at infinity
  int tvar = k;

  // the last component must pin the indeterminacy to the hyperplane at
  // infinity (homogenized polynomial maps have t^degree there)
  if (!is_monomial(F.comps[(std::size_t)k]) ||
      !F.comps[(std::size_t)k].depends_on(tvar))
    throw InputError(
        "indeterminacy_points: expected the homogenization of a polynomial map");

  std::vector<MultiPoly> forms;
  for (int i = 0; i < k; ++i) {
    MultiPoly r = F.comps[(std::size_t)i].restricted_zero(tvar).dehomogenized(tvar);
    if (!r.is_zero()) forms.push_back(r);
  }

  IndeterminacySet out;
  if (forms.empty()) return out;  // whole hyperplane: not expected for valid maps

  if (std::all_of(forms.begin(), forms.end(), is_monomial)) {
    auto comps = monomial_components(forms, n);
    for (const auto& c : comps) {
      if (c.dim == 0) {
        int free_var = -1;
        for (int i = 0; i < n; ++i)
          if (std::find(c.vanishing.begin(), c.vanishing.end(), i) ==
              c.vanishing.end())
            free_var = i;
        auto pt = coordinate_point(n, free_var);
        pt.push_back(GaussRat(0));  // back on P^k: t = 0
        out.points.push_back(pt);
      } else {
        out.components.push_back(c);
      }
    }
    verify_points(F, out);
    return out;
  }

  // general forms: peel the gcd as a positive-dimensional component, then
  // look for isolated residual points
  MultiPoly g(n);
  for (const auto& f : forms) {
    g = g.is_zero() ? f : mapalg::poly_gcd(g, f);
    if (g.is_constant()) break;
  }
  std::vector<MultiPoly> residual;
  if (!g.is_constant()) {
    InfinityComponent c;
    c.form = g;
    c.dim = n - 2;  // hypersurface in P^{n-1}
    out.components.push_back(c);
    for (const auto& f : forms) residual.push_back(*mapalg::try_divide(f, g));
  } else {
    residual = forms;
  }

  // coordinate points of the residual system (covers the desk examples);
  // drop points already lying on a recorded component
  for (int i = 0; i < n; ++i) {
    auto pt = coordinate_point(n, i);
    bool all = std::all_of(residual.begin(), residual.end(), [&](const MultiPoly& f) {
      return f.is_constant() ? f.is_zero() : vanishes_at(f, pt);
    });
    bool nontrivial =
        std::any_of(residual.begin(), residual.end(),
                    [&](const MultiPoly& f) { return !f.is_constant(); });
    if (!all || !nontrivial) continue;
    bool on_component = std::any_of(
        out.components.begin(), out.components.end(), [&](const InfinityComponent& c) {
          return c.form && vanishes_at(*c.form, pt);
        });
    if (on_component) continue;
    pt.push_back(GaussRat(0));
    out.points.push_back(pt);
  }
  verify_points(F, out);
  return out;
}

namespace {

// Exact emptiness test for the intersection of two indeterminacy sets living
// in the hyperplane at infinity P^{n-1}, n = number of infinity coordinates.
bool sets_disjoint(const IndeterminacySet& a, const IndeterminacySet& b, int n) {
  auto point_on = [&](const std::vector<GaussRat>& pt, const InfinityComponent& c) {
    for (int v : c.vanishing)
      if (!pt[(std::size_t)v].is_zero()) return false;
    if (c.form) {
      std::vector<GaussRat> ambient(pt.begin(), pt.end() - 1);
      if (!c.form->eval(std::span<const GaussRat>(ambient)).is_zero()) return false;
    }
    return true;
  };
  for (const auto& p : a.points)
    for (const auto& q : b.points)
      if (p == q) return false;
  for (const auto& p : a.points)
    for (const auto& c : b.components)
      if (point_on(p, c)) return false;
  for (const auto& q : b.points)
    for (const auto& c : a.components)
      if (point_on(q, c)) return false;
  for (const auto& c1 : a.components)
    for (const auto& c2 : b.components) {
      if (c1.form || c2.form) {
        // positive-dimensional sets with a hypersurface among them meet
        // whenever dim c1 + dim c2 >= n - 1 (projective dimension count)
        if (c1.dim + c2.dim >= n - 1) return false;
        throw InputError(
            "regularity_check: low-dimensional curve-curve test unsupported");
      }
      std::vector<int> both = c1.vanishing;
      for (int v : c2.vanishing)
        if (std::find(both.begin(), both.end(), v) == both.end()) both.push_back(v);
      if ((int)both.size() <= n - 1) return false;  // common subspace survives
    }
  return true;
}

RegularityReport build_report(const mapalg::ProjMap& F, const mapalg::ProjMap& Finv) {
  RegularityReport rep;
  rep.i_f = indeterminacy_points(F);
  rep.i_finv = indeterminacy_points(Finv);
  rep.lambda1 = F.degree;
  rep.regular = sets_disjoint(rep.i_f, rep.i_finv, F.dim);
  rep.l = rep.i_finv.dim() + 1;
  for (int j = 0; j <= rep.l; ++j)
    rep.lambda_check.push_back(std::pow((double)rep.lambda1, (double)j));
  if (!rep.regular)
    rep.note = "indeterminacy sets of f and f^-1 meet; map is not regular "
               "(weakly regular data reported descriptively)";
  return rep;
}

}  // namespace

RegularityReport regularity_check(const mapalg::AffineMap& f,
                                  const mapalg::AffineMap& f_inverse) {
  return build_report(homogenize_proj(f), homogenize_proj(f_inverse));
}

RegularityReport regularity_check(const HenonMap& h) {
  return regularity_check(h.forward_affine(), h.inverse_affine());
}

RegularityReport product_regularity(const HenonMap& h1, const HenonMap& h2) {
  using mapalg::MultiPoly;
  // product map on C^4 = (h1(z1, w1), h2(z2, w2)), homogenized to P^4
  auto f1 = h1.forward_affine(), f2 = h2.forward_affine();
  auto g1 = h1.inverse_affine(), g2 = h2.inverse_affine();
  auto lift = [&](const mapalg::AffineMap& a, const mapalg::AffineMap& b) {
    // embed a's variables at (0, 1), b's at (2, 3)
    std::vector<MultiPoly> argsA = {MultiPoly::variable(4, 0), MultiPoly::variable(4, 1)};
    std::vector<MultiPoly> argsB = {MultiPoly::variable(4, 2), MultiPoly::variable(4, 3)};
    mapalg::AffineMap m;
    m.k = 4;
    m.comps = {mapalg::RatFunc::from_poly(a.comps[0].num.substitute(argsA)),
               mapalg::RatFunc::from_poly(a.comps[1].num.substitute(argsA)),
               mapalg::RatFunc::from_poly(b.comps[0].num.substitute(argsB)),
               mapalg::RatFunc::from_poly(b.comps[1].num.substitute(argsB))};
    return m;
  };
  return build_report(homogenize_proj(lift(f1, f2)), homogenize_proj(lift(g1, g2)));
}

}  // namespace degdyn::henon
