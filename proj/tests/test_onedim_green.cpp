#include "doctest.h"

#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/random_stream.hpp"

using namespace degdyn;
using namespace degdyn::onedim;

namespace {

// closed form for z^2 - 2: log of the larger root of w + 1/w = z
double cheb_green(cdouble z) {
  cdouble s = std::sqrt(z * z - 4.0);
  double a = std::abs((z + s) / 2.0), b = std::abs((z - s) / 2.0);
  return std::log(std::max({a, b, 1.0}));
}

}  // namespace

TEST_CASE("green closed forms at N = 60") {
  GreenParams gp;
  gp.max_iter = 60;
  Poly1C sq = Poly1C::parse("z^2");
  Poly1C cheb = Poly1C::parse("z^2 - 2");

  SUBCASE("pointwise pins") {
    auto g = green(sq, {2.0, 0.0}, gp);
    CHECK(g.value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(green(cheb, {3.0, 0.0}, gp).value ==
          doctest::Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-12));
    auto in = green(cheb, {1.0, 0.0}, gp);
    CHECK(in.value == 0.0);
    CHECK(in.bounded);
    CHECK(in.error < 1e-15);
  }
  SUBCASE("sup over 100 probes vs closed form <= 1e-8") {
    num::RandomStream rs(11, 0);
    double worst_sq = 0.0, worst_ch = 0.0;
    for (int i = 0; i < 100; ++i) {
      cdouble z = rs.in_rectangle(-3, 3, -2, 2);
      worst_sq = std::max(worst_sq, std::abs(green(sq, z, gp).value -
                                             std::log(std::max(1.0, std::abs(z)))));
      worst_ch = std::max(worst_ch, std::abs(green(cheb, z, gp).value - cheb_green(z)));
    }
    CHECK(worst_sq <= 1e-8);
    CHECK(worst_ch <= 1e-8);
  }
  SUBCASE("NaN rejected") {
    CHECK_THROWS_AS(green(sq, {std::nan(""), 0.0}, gp), InputError);
  }
}

TEST_CASE("functional equation |G(f z) - d G(z)| <= 2 error") {
  GreenParams gp;
  num::RandomStream rs(23, 1);
  for (const char* txt : {"z^2 - 2", "z^2 + 0.3 + 0.2*i", "z^3 - z + 1/2"}) {
    Poly1C f = Poly1C::parse(txt);
    double d = (double)f.degree();
    for (int i = 0; i < 60; ++i) {
      cdouble z = rs.in_rectangle(-2, 2, -2, 2);
      auto gz = green(f, z, gp);
      auto gf = green(f, f(z), gp);
      double tol = 2.0 * (gz.error + gf.error) + 1e-11 * (1.0 + d * gz.value);
      CHECK(std::abs(gf.value - d * gz.value) <= tol);
    }
  }
}

TEST_CASE("capacity: monic offset zero, leading coefficient shifts it") {
  Poly1C sq = Poly1C::parse("z^2");
  auto c1 = capacity_check(sq, {1e4});
  CHECK(c1.offset == 0.0);
  CHECK(c1.max_deviation <= 1e-12);

  auto c2 = capacity_check(Poly1C::parse("z^2 - 2"), {1e4});
  CHECK(c2.max_deviation <= 1e-6);

  // f = 2z^2: f^n(z) = 2^(2^n - 1) z^(2^n), so G = log|z| + log 2 exactly
  auto c3 = capacity_check(Poly1C::parse("2*z^2"), {2.0, 10.0, 1e4});
  CHECK(c3.offset == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(c3.max_deviation <= 1e-9);
}

TEST_CASE("monic centered normal form") {
  SUBCASE("2z^2 + 1 -> z^2 + 2 via z -> 2z") {
    auto [g, A] = normalize_monic_centered(Poly1C::parse("2*z^2 + 1"));
    REQUIRE(g.degree() == 2);
    CHECK(std::abs(g.c[2] - cdouble{1, 0}) == 0.0);
    CHECK(std::abs(g.c[1]) == 0.0);
    CHECK(std::abs(g.c[0] - cdouble{2, 0}) < 1e-14);
    CHECK(std::abs(A.a - cdouble{2, 0}) < 1e-14);
    CHECK(std::abs(A.b) < 1e-14);
  }
  SUBCASE("z^2 - 2 unchanged") {
    auto [g, A] = normalize_monic_centered(Poly1C::parse("z^2 - 2"));
    CHECK(std::abs(A.a - cdouble{1, 0}) < 1e-14);
    CHECK(std::abs(A.b) < 1e-14);
    CHECK(std::abs(g.c[0] - cdouble{-2, 0}) < 1e-14);
  }
  SUBCASE("z^3 + 3z^2 centered by z -> z + 1") {
    auto [g, A] = normalize_monic_centered(Poly1C::parse("z^3 + 3*z^2"));
    CHECK(std::abs(g.c[2]) == 0.0);
    CHECK(std::abs(A.a - cdouble{1, 0}) < 1e-14);
    CHECK(std::abs(A.b - cdouble{1, 0}) < 1e-14);
    // conjugacy property: A(f(z)) = g(A(z)) on probes
    Poly1C f = Poly1C::parse("z^3 + 3*z^2");
    num::RandomStream rs(3, 3);
    for (int i = 0; i < 20; ++i) {
      cdouble z = rs.in_rectangle(-1, 1, -1, 1);
      cdouble lhs = A.a * f(z) + A.b;
      cdouble rhs = g(A.a * z + A.b);
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("exceptional points") {
  SUBCASE("power map: {0, infinity}") {
    auto e = exceptional_points(RatMap1C::from_poly(Poly1C::parse("z^4")));
    CHECK(e.points.size() == 2);
    CHECK(e.tag == ExceptionalSet::Tag::PowerMap);
  }
  SUBCASE("generic polynomial: infinity only") {
    auto e = exceptional_points(RatMap1C::from_poly(Poly1C::parse("z^2 - 2")));
    REQUIRE(e.points.size() == 1);
    CHECK(e.points[0].at_infinity);
    CHECK(e.tag == ExceptionalSet::Tag::Polynomial);
  }
  SUBCASE("z^2 + 1: the finite ramified point fails the orbit test") {
    RatMap1C f = RatMap1C::from_poly(Poly1C::parse("z^2 + 1"));
    CHECK(local_degree(f, {cdouble{0, 0}, false}) == 2);
    CHECK(local_degree(f, {cdouble{1, 0}, false}) == 1);
    auto e = exceptional_points(f);
    REQUIRE(e.points.size() == 1);
    CHECK(e.points[0].at_infinity);
  }
  SUBCASE("1/z^2 is a flipped power map") {
    auto e = exceptional_points(
        RatMap1C::make(Poly1C::parse("1"), Poly1C::parse("z^2")));
    CHECK(e.points.size() == 2);
    CHECK(e.tag == ExceptionalSet::Tag::PowerMap);
  }
  SUBCASE("rational non-exceptional map") {
    // f = (z^2 - 1)/(z^2 + 1): no totally invariant finite set
    auto e = exceptional_points(
        RatMap1C::make(Poly1C::parse("z^2 - 1"), Poly1C::parse("z^2 + 1")));
    CHECK(e.points.empty());
    CHECK(e.tag == ExceptionalSet::Tag::None);
  }
}
