#include "doctest.h"

#include <cmath>

#include "degdyn/degrees.hpp"
#include "degdyn/henon.hpp"
#include "degdyn/map_parser.hpp"
#include "degdyn/random_stream.hpp"

using namespace degdyn;
using namespace degdyn::henon;

namespace {

HenonMap std_henon() { return HenonMap::single(Poly1C::parse("z^2 + 1"), {1.0, 0.0}); }

}  // namespace

TEST_CASE("henon basics: inverse and jacobian") {
  HenonMap h = HenonMap::single(Poly1C::parse("z^2 - 1.1"), {0.3, 0.0});
  num::RandomStream rs(42, 0);
  for (int i = 0; i < 100; ++i) {
    C2 x = {rs.in_rectangle(-2, 2, -2, 2), rs.in_rectangle(-2, 2, -2, 2)};
    C2 y = h.apply_inverse(h.apply(x));
    CHECK(std::abs(y[0] - x[0]) + std::abs(y[1] - x[1]) <= 1e-9);
  }
  CHECK(h.jacobian() == cdouble{0.3, 0.0});

  // chain of two factors
  HenonMap chain;
  chain.factors = {{Poly1C::parse("z^2 + 0.2"), {1.0, 0.0}},
                   {Poly1C::parse("z^3 - z"), {0.5, 0.0}}};
  CHECK(chain.degree() == 6);
  for (int i = 0; i < 50; ++i) {
    C2 x = {rs.in_rectangle(-1, 1, -1, 1), rs.in_rectangle(-1, 1, -1, 1)};
    C2 y = chain.apply_inverse(chain.apply(x));
    CHECK(std::abs(y[0] - x[0]) + std::abs(y[1] - x[1]) <= 1e-8);
  }
}

TEST_CASE("green plus: growth, invariance, bounded orbits") {
  HenonMap h = HenonMap::single(Poly1C::parse("z^2"), {1.0, 0.0});  // (z^2 - w, z)
  GreenParams gp;

  SUBCASE("dominant z^2 growth from far out") {
    auto g = green_plus(h, {cdouble{1e6, 0.0}, cdouble{}}, gp);
    CHECK(std::abs(g.value - std::log(1e6)) <= 1e-3);
  }
  SUBCASE("functional equation on a 100-point probe set") {
    num::RandomStream rs(7, 7);
    for (int i = 0; i < 100; ++i) {
      C2 x = {rs.in_rectangle(-3, 3, -3, 3), rs.in_rectangle(-3, 3, -3, 3)};
      auto gx = green_plus(h, x, gp);
      auto gf = green_plus(h, h.apply(x), gp);
      CHECK(std::abs(gf.value - 2.0 * gx.value) <= 1e-6);
    }
  }
  SUBCASE("G+ >= 0 and G+ - log+ ||x|| bounded on probe rings") {
    num::RandomStream rs(8, 8);
    for (double r : {10.0, 1e3, 1e6}) {
      for (int i = 0; i < 30; ++i) {
        cdouble u = rs.unit_circle(), v = rs.unit_circle();
        C2 x = {r * u, r * v};
        auto g = green_plus(h, x, gp);
        CHECK(g.value >= 0.0);
        CHECK(std::abs(g.value - std::log(r)) <= std::log(4.0) + 1.0);
      }
    }
  }
  SUBCASE("fixed point has G+ = G- = 0 and lies in K") {
    // z^2 - z = z  =>  z = 0 or 2; w = z: (0,0) is fixed
    auto cls = classify_point(h, {cdouble{}, cdouble{}}, gp);
    CHECK(cls.gplus.value == 0.0);
    CHECK(cls.in_K_plus);
    CHECK(cls.in_K_minus);
    CHECK(cls.in_K);
    auto esc = classify_point(h, {cdouble{1e6, 0.0}, cdouble{}}, gp);
    CHECK(!esc.in_K_plus);
  }
}

TEST_CASE("henon fixed points: closed form and multiplier identities") {
  // p = z^2 + c, a: fixed z = ((1+a) +- sqrt((1+a)^2 - 4c))/2
  cdouble a{0.3, 0.0}, c{-1.0, 0.0};
  HenonMap h = HenonMap::single(Poly1C({c, cdouble{}, cdouble{1.0, 0.0}}), a);
  auto fps = fixed_points(h);
  REQUIRE(fps.size() == 2);
  cdouble disc = std::sqrt((1.0 + a) * (1.0 + a) - 4.0 * c);
  for (const auto& fp : fps) {
    bool plus = std::abs(fp.point[0] - (1.0 + a + disc) / 2.0) < 1e-10;
    bool minus = std::abs(fp.point[0] - (1.0 + a - disc) / 2.0) < 1e-10;
    CHECK((plus || minus));
    CHECK(std::abs(fp.point[0] - fp.point[1]) <= 1e-12);
    // eigenvalue product = a exactly (determinant identity)
    CHECK(std::abs(fp.eigenvalues[0] * fp.eigenvalues[1] - a) <= 1e-10);
  }

  SUBCASE("c = 0, a = 0.3: larger fixed point is a saddle, chi_u >= log 2 / 2") {
    HenonMap h0 = HenonMap::single(Poly1C({cdouble{}, cdouble{}, cdouble{1, 0}}), a);
    auto f0 = fixed_points(h0);
    REQUIRE(f0.size() == 2);
    const auto& big = std::abs(f0[0].point[0]) > std::abs(f0[1].point[0]) ? f0[0] : f0[1];
    CHECK(big.type == HenonFixedPoint::Type::Saddle);
    double chi_u = std::log(std::max(std::abs(big.eigenvalues[0]),
                                     std::abs(big.eigenvalues[1])));
    CHECK(chi_u >= 0.5 * std::log(2.0));
  }
}

TEST_CASE("newton search recovers the closed-form fixed points") {
  HenonMap h = std_henon();
  auto closed = fixed_points(h);
  auto newton = periodic_points_newton(h, 1);
  // every closed-form point appears among the Newton results
  for (const auto& c : closed) {
    bool found = false;
    for (const auto& n : newton)
      found = found || (std::abs(n.point[0] - c.point[0]) +
                            std::abs(n.point[1] - c.point[1]) <=
                        1e-7);
    CHECK(found);
  }
  for (const auto& n : newton)
    CHECK(std::abs(n.eigenvalues[0] * n.eigenvalues[1] - h.jacobian()) <= 1e-8);
}

TEST_CASE("henon degree sequence is 2^n and topdeg 1") {
  HenonMap h = std_henon();
  auto rep = degrees::degree_sequence(homogenize_proj(h.forward_affine()), 6);
  std::vector<long long> expect = {2, 4, 8, 16, 32, 64};
  CHECK(rep.d == expect);
  CHECK(rep.stable);
  CHECK(degrees::topological_degree(h.forward_affine(), 3, 3) == 1);
}

TEST_CASE("indeterminacy points") {
  SUBCASE("Henon (z^2 - w, z): I_f = {[0:1:0]}, I_finv = {[1:0:0]}") {
    HenonMap h = HenonMap::single(Poly1C::parse("z^2"), {1.0, 0.0});
    auto i_f = indeterminacy_points(mapalg::homogenize_proj(h.forward_affine()));
    auto i_b = indeterminacy_points(mapalg::homogenize_proj(h.inverse_affine()));
    REQUIRE(i_f.points.size() == 1);
    REQUIRE(i_b.points.size() == 1);
    CHECK(i_f.components.empty());
    using mapalg::GaussRat;
    CHECK(i_f.points[0] == std::vector<GaussRat>{GaussRat(0), GaussRat(1), GaussRat(0)});
    CHECK(i_b.points[0] == std::vector<GaussRat>{GaussRat(1), GaussRat(0), GaussRat(0)});
  }
  SUBCASE("(zw+1, z+2): both coordinate points at infinity") {
    auto F = mapalg::parse_proj("(z*w + 1, z + 2)", 2);
    auto i_f = indeterminacy_points(F);
    REQUIRE(i_f.points.size() == 2);
    CHECK(i_f.components.empty());
  }
  SUBCASE("shift-like map on C^3: point vs line, regular with l = 2") {
    // (P2(z1,z2) + a3 z3, P1(z1) + a2 z2, a1 z1), deg_{z_j} P_j = 2
    auto f = mapalg::parse_affine("(z1*z2 + z2^2 + 2*z3, z1^2 + 3*z2, 5*z1)", 3);
    // inverse: z1 = y3/5; z2 = (y2 - (y3/5)^2)/3; z3 = (y1 - P2)/2
    auto finv = mapalg::parse_affine(
        "(z3/5, (z2 - z3^2/25)/3, "
        "(z1 - (z3/5)*((z2 - z3^2/25)/3) - ((z2 - z3^2/25)/3)^2)/2)",
        3);
    // sanity: f o finv = id on probes
    num::RandomStream rs(5, 5);
    for (int t = 0; t < 20; ++t) {
      std::vector<cdouble> x = {rs.in_rectangle(-1, 1, -1, 1),
                                rs.in_rectangle(-1, 1, -1, 1),
                                rs.in_rectangle(-1, 1, -1, 1)};
      std::vector<cdouble> mid(3), back(3);
      for (int i = 0; i < 3; ++i)
        mid[(std::size_t)i] = finv.comps[(std::size_t)i].num.eval(
            std::span<const cdouble>(x)) /
            finv.comps[(std::size_t)i].den.eval(std::span<const cdouble>(x));
      for (int i = 0; i < 3; ++i)
        back[(std::size_t)i] = f.comps[(std::size_t)i].num.eval(
            std::span<const cdouble>(mid));
      for (int i = 0; i < 3; ++i)
        CHECK(std::abs(back[(std::size_t)i] - x[(std::size_t)i]) <= 1e-9);
    }
    auto rep = regularity_check(f, finv);
    CHECK(rep.regular);
    CHECK(rep.i_f.dim() == 0);
    CHECK(rep.i_finv.dim() == 1);
    CHECK(rep.l == 2);
    REQUIRE(rep.i_f.points.size() == 1);
    using mapalg::GaussRat;
    CHECK(rep.i_f.points[0] == std::vector<GaussRat>{GaussRat(0), GaussRat(0),
                                                     GaussRat(1), GaussRat(0)});
  }
}

TEST_CASE("regularity verdicts") {
  SUBCASE("any Henon map is regular with l = 1") {
    auto rep = regularity_check(std_henon());
    CHECK(rep.regular);
    CHECK(rep.l == 1);
    CHECK(rep.lambda1 == 2);
  }
  SUBCASE("Henon chain is regular with l = 1") {
    HenonMap chain;
    chain.factors = {{Poly1C::parse("z^2 + 1"), {1.0, 0.0}},
                     {Poly1C::parse("z^2 - 0.5"), {-0.25, 0.0}}};
    auto rep = regularity_check(chain);
    CHECK(rep.regular);
    CHECK(rep.l == 1);
    CHECK(rep.lambda1 == 4);
  }
  SUBCASE("product of two equal-degree Henon maps on C^4: regular, l = 2") {
    auto rep = product_regularity(std_henon(),
                                  HenonMap::single(Poly1C::parse("z^2 - 1"), {0.5, 0.0}));
    CHECK(rep.regular);
    CHECK(rep.i_finv.dim() == 1);
    CHECK(rep.l == 2);
  }
  SUBCASE("product of unequal degrees is not regular") {
    auto rep = product_regularity(std_henon(),
                                  HenonMap::single(Poly1C::parse("z^3 - z"), {0.5, 0.0}));
    CHECK(!rep.regular);
  }
  SUBCASE("(xy + z, x^2 + y, x) on C^3 is not regular (both sets are curves)") {
    auto f = mapalg::parse_affine("(x*y + z, x^2 + y, x)", 3);
    // inverse: x = s, y = v - s^2, z = u - s(v - s^2) with (u,v,s) the image
    auto finv = mapalg::parse_affine("(z, y - z^2, x - z*(y - z^2))", 3);
    auto rep = regularity_check(f, finv);
    CHECK(!rep.regular);
    CHECK(rep.i_f.dim() >= 1);
    CHECK(rep.i_finv.dim() >= 1);
    CHECK(!rep.note.empty());
  }
}

TEST_CASE("newton period-2 search on a dissipative Henon map") {
  // p = z^2 - 1.4 (real Henon-like), a = 0.3: period-2 orbit exists
  HenonMap h = HenonMap::single(Poly1C::parse("z^2 - 1.4"), {0.3, 0.0});
  int failed = 0;
  auto pts = periodic_points_newton(h, 2, &failed);
  CHECK(failed >= 0);
  REQUIRE(!pts.empty());
  for (const auto& p : pts) {
    C2 y = p.point;
    for (int s = 0; s < 2; ++s) y = h.apply(y);
    CHECK(std::abs(y[0] - p.point[0]) + std::abs(y[1] - p.point[1]) <= 1e-8);
    // determinant of the period-2 multiplier is a^2
    CHECK(std::abs(p.eigenvalues[0] * p.eigenvalues[1] - cdouble{0.09, 0.0}) <= 1e-8);
  }
  // at least one genuinely period-2 point (not fixed)
  bool has_two_cycle = false;
  for (const auto& p : pts) {
    C2 y = h.apply(p.point);
    if (std::abs(y[0] - p.point[0]) + std::abs(y[1] - p.point[1]) > 1e-6)
      has_two_cycle = true;
  }
  CHECK(has_two_cycle);
  CHECK_THROWS_AS(periodic_points_newton(h, 40), InputError);
}
