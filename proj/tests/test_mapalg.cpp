#include "doctest.h"

#include <sstream>

#include "degdyn/map_parser.hpp"
#include "degdyn/maps.hpp"
#include "degdyn/multipoly.hpp"
#include "degdyn/errors.hpp"
#include "degdyn/random_stream.hpp"

using namespace degdyn::mapalg;

namespace {

MultiPoly var(int n, int i) { return MultiPoly::variable(n, i); }

ProjMap cremona() { return parse_proj("[y*z : x*z : x*y]", 2); }

}  // namespace

TEST_CASE("gaussian rational field ops") {
  GaussRat a(mpq_class(1, 2), mpq_class(3));
  GaussRat b(mpq_class(-2), mpq_class(1, 5));
  CHECK(a + b - b == a);
  CHECK((a * b) / b == a);
  CHECK(inverse(a) * a == GaussRat(1));
  CHECK(to_string(GaussRat(mpq_class(1, 2), mpq_class(-5))) == "1/2 - 5*i");
}

TEST_CASE("multipoly arithmetic and degrees") {
  int n = 2;
  MultiPoly x = var(n, 0), y = var(n, 1);
  MultiPoly p = x * x - y * y;
  MultiPoly q = x - y;
  CHECK(p.total_degree() == 2);
  CHECK(p.is_homogeneous());
  CHECK(!(p + MultiPoly::constant(n, GaussRat(1))).is_homogeneous());
  CHECK((p - p).is_zero());
  CHECK((p - p).total_degree() == -1);

  SUBCASE("gcd factorization cases") {
    // gcd(x^2-y^2, x-y) = x-y
    CHECK(poly_gcd(p, q) == q.monic());
    // gcd(t*A, t*B), A,B coprime -> t
    MultiPoly t = var(3, 2);
    MultiPoly A = var(3, 0) * var(3, 0) + var(3, 1);
    MultiPoly B = var(3, 1) * var(3, 1) + MultiPoly::constant(3, GaussRat(2));
    CHECK(poly_gcd(t * A, t * B) == t);
    // gcd(p, 0) = p verbatim
    CHECK(poly_gcd(p, MultiPoly(2)) == p);
  }

  SUBCASE("gcd reduction is idempotent") {
    MultiPoly g = poly_gcd(p, q);
    MultiPoly r = *try_divide(p, g);
    CHECK(poly_gcd(r, *try_divide(q, g)).is_constant());
  }
}

TEST_CASE("parser on spec inputs") {
  SUBCASE("Cremona involution, d = 2") {
    ProjMap f = cremona();
    CHECK(f.dim == 2);
    CHECK(f.degree == 2);
  }
  SUBCASE("affine to P^2 homogenization") {
    auto m = parse_map("(z*w + 1, z + 2)", {MapModel::Proj, 2});
    const ProjMap& f = std::get<ProjMap>(m);
    CHECK(f.degree == 2);
    // components [zw + t^2 : zt + 2t^2 : t^2]
    MultiPoly z = var(3, 0), w = var(3, 1), t = var(3, 2);
    CHECK(f.comps[0] == z * w + t * t);
    CHECK(f.comps[1] == z * t + (t * t).scaled(GaussRat(2)));
    CHECK(f.comps[2] == t * t);
  }
  SUBCASE("affine to P^1 x P^1: bidegree matrix") {
    auto m = parse_map("(z*w + 1, z + 2)", {MapModel::BiProj, 2});
    const BiProjMap& h = std::get<BiProjMap>(m);
    auto B = h.bidegree();
    CHECK(B[0][0] == 1);
    CHECK(B[0][1] == 1);
    CHECK(B[1][0] == 1);
    CHECK(B[1][1] == 0);
  }
  SUBCASE("syntax error carries the offset") {
    try {
      parse_map("(z*w + )", {MapModel::Affine, 2});
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset == 7);
    }
  }
  SUBCASE("zero map rejected") {
    CHECK_THROWS_AS(parse_map("[x*0 : 0 : 0]", {MapModel::Proj, 2}), ParseError);
  }
  SUBCASE("inhomogeneous components rejected") {
    CHECK_THROWS_AS(parse_map("[x + 1 : y : z]", {MapModel::Proj, 2}), ParseError);
  }
  SUBCASE("gaussian rational literals") {
    AffineMap f = parse_affine("(1/2 + 3/4*i + z, w)", 2);
    CHECK(f.comps[0].num.constant_term() ==
          GaussRat(mpq_class(1, 2), mpq_class(3, 4)));
  }
}

TEST_CASE("homogenize identity and degree drop under composition") {
  SUBCASE("identity stays degree 1") {
    auto m = parse_map("(z, w)", {MapModel::Proj, 2});
    CHECK(std::get<ProjMap>(m).degree == 1);
  }
  SUBCASE("Cremona o Cremona = identity (gcd = xyz)") {
    ProjMap f = cremona();
    ProjMap ff = compose(f, f);
    CHECK(ff.degree == 1);
    ProjMap id = proj_identity(2);
    for (int i = 0; i < 3; ++i)
      CHECK(ff.comps[i].monic() == id.comps[i]);
  }
  SUBCASE("P^3 involution squared = identity") {
    ProjMap g = parse_proj("[z1*z2*z3 : z0*z2*z3 : z0*z1*z3 : z0*z1*z2]", 3);
    CHECK(g.degree == 3);
    ProjMap gg = compose(g, g);
    CHECK(gg.degree == 1);
    // oracle: common factor of the squared components is (z0 z1 z2 z3)^2
    std::vector<MultiPoly> raw;
    for (const auto& c : g.comps) raw.push_back(c.substitute(g.comps));
    MultiPoly common = poly_gcd(poly_gcd(raw[0], raw[1]), poly_gcd(raw[2], raw[3]));
    MultiPoly expect = MultiPoly::constant(4, GaussRat(1));
    for (int i = 0; i < 4; ++i) expect = expect * var(4, i) * var(4, i);
    CHECK(common == expect.monic());
  }
  SUBCASE("(zw+t^2 : zt+2t^2 : t^2) squared has degree 3, gcd = t") {
    ProjMap g = std::get<ProjMap>(parse_map("(z*w + 1, z + 2)", {MapModel::Proj, 2}));
    ProjMap g2 = compose(g, g);
    CHECK(g2.degree == 3);
  }
}

TEST_CASE("compose properties") {
  ProjMap f = std::get<ProjMap>(parse_map("(z*w + 1, z + 2)", {MapModel::Proj, 2}));
  ProjMap id = proj_identity(2);
  SUBCASE("identity is neutral, bit-exact") {
    ProjMap a = compose(f, id), b = compose(id, f);
    for (int i = 0; i < 3; ++i) {
      CHECK(a.comps[i].monic() == f.comps[i].monic());
      CHECK(b.comps[i].monic() == f.comps[i].monic());
    }
  }
  SUBCASE("deg(f o g) <= deg f deg g; equality for power maps") {
    ProjMap g = cremona();
    CHECK(compose(f, g).degree <= f.degree * g.degree);
    ProjMap pw = parse_proj("[x^3 : y^3 : z^3]", 2);
    CHECK(compose(pw, pw).degree == 9);
  }
}

TEST_CASE("jacobian determinant") {
  SUBCASE("(z^2, w^2) -> 4zw") {
    AffineMap f = parse_affine("(z^2, w^2)", 2);
    RatFunc j = jacobian_det(f);
    MultiPoly z = var(2, 0), w = var(2, 1);
    CHECK(j.num == (z * w).scaled(GaussRat(4)));
  }
  SUBCASE("Henon (p(z)-aw, z) -> constant a") {
    // p = z^2 + 1, a = 3: direct differentiation det [[p', -a],[1,0]] = a
    AffineMap f = parse_affine("(z^2 + 1 - 3*w, z)", 2);
    RatFunc j = jacobian_det(f);
    CHECK(j.num.is_constant());
    CHECK(j.num.constant_term() == GaussRat(3));
  }
  SUBCASE("(z, z) flagged non-dominant") {
    AffineMap f = parse_affine("(z, z)", 2);
    CHECK(jacobian_det(f).num.is_zero());
  }
}

TEST_CASE("print/parse round trip on random maps") {
  degdyn::num::RandomStream rs(20240811, 0);
  for (int iter = 0; iter < 25; ++iter) {
    MultiPoly p(2);
    int terms = 1 + (int)rs.choice(5);
    for (int t = 0; t < terms; ++t) {
      ExpVec e = {(std::uint32_t)rs.choice(4), (std::uint32_t)rs.choice(4)};
      mpq_class re((long)rs.choice(9) - 4, 1 + (long)rs.choice(4));
      mpq_class im((long)rs.choice(5) - 2, 3);
      re.canonicalize();
      im.canonicalize();
      p.add_term(e, GaussRat(re, im));
    }
    if (p.is_zero()) continue;
    AffineMap f;
    f.k = 2;
    f.comps = {RatFunc::from_poly(p), RatFunc::from_poly(var(2, 0))};
    AffineMap g = parse_affine(to_string(f), 2);
    CHECK(g.comps[0].num == p);
  }
}

TEST_CASE("projective print/parse round trip") {
  for (const char* txt : {"[y*z : x*z : x*y]", "[x^2 - y*z : x*z + 2*z^2 : z^2]"}) {
    ProjMap m = parse_proj(txt, 2);
    ProjMap again = parse_proj(to_string(m), 2);
    for (int i = 0; i < 3; ++i) CHECK(m.comps[i].monic() == again.comps[i].monic());
  }
}

TEST_CASE("parser never crashes on garbage") {
  degdyn::num::RandomStream rs(0xfeed, 0);
  const std::string alphabet = "zwxyt01239+-*/^():,[]. i";
  for (int iter = 0; iter < 400; ++iter) {
    std::string s;
    int len = 1 + (int)rs.choice(24);
    for (int i = 0; i < len; ++i) s += alphabet[rs.choice(alphabet.size())];
    for (auto model : {MapModel::Affine, MapModel::Proj, MapModel::BiProj}) {
      try {
        parse_map(s, {model, 2});
      } catch (const ParseError&) {
      } catch (const std::invalid_argument&) {
      } catch (const std::overflow_error&) {
      } catch (const std::out_of_range&) {
      } catch (const degdyn::InputError&) {
      }
    }
  }
  CHECK(true);  // reaching here means no crash/UB trap
}

TEST_CASE("composition is associative after reduction (bit-exact)") {
  degdyn::num::RandomStream rs(0xa550c, 0);
  auto random_quadratic = [&]() {
    for (;;) {
      MultiPoly c1(2), c2(2);
      for (int t = 0; t < 3; ++t) {
        ExpVec e = {(std::uint32_t)rs.choice(3), 0};
        e[1] = (std::uint32_t)rs.choice(3 - e[0]);
        c1.add_term(e, GaussRat((long)rs.choice(5) - 2));
        ExpVec e2 = {(std::uint32_t)rs.choice(3), 0};
        e2[1] = (std::uint32_t)rs.choice(3 - e2[0]);
        c2.add_term(e2, GaussRat((long)rs.choice(5) - 2));
      }
      if (c1.is_zero() || c2.is_zero()) continue;
      AffineMap f;
      f.k = 2;
      f.comps = {RatFunc::from_poly(c1), RatFunc::from_poly(c2)};
      try {
        ProjMap F = homogenize_proj(f);
        if (is_dominant(F)) return F;
      } catch (const std::invalid_argument&) {
      }
    }
  };
  for (int iter = 0; iter < 8; ++iter) {
    ProjMap f = random_quadratic(), g = random_quadratic(), h = random_quadratic();
    ProjMap left = compose(compose(f, g), h);
    ProjMap right = compose(f, compose(g, h));
    REQUIRE(left.degree == right.degree);
    for (int i = 0; i < 3; ++i) CHECK(left.comps[i].monic() == right.comps[i].monic());
  }
}

TEST_CASE("gcd divisibility on random products") {
  degdyn::num::RandomStream rs(0x6cd, 1);
  auto random_poly = [&](int terms) {
    MultiPoly p(2);
    for (int t = 0; t < terms; ++t) {
      ExpVec e = {(std::uint32_t)rs.choice(3), (std::uint32_t)rs.choice(3)};
      p.add_term(e, GaussRat((long)rs.choice(7) - 3, (long)rs.choice(3) - 1));
    }
    return p;
  };
  int done = 0;
  while (done < 12) {
    MultiPoly g = random_poly(2), a = random_poly(3), b = random_poly(3);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    MultiPoly d = poly_gcd(a * g, b * g);
    // g divides the gcd of (a g, b g)
    CHECK(try_divide(d, g.monic()).has_value());
    // and the gcd divides both inputs
    CHECK(try_divide(a * g, d).has_value());
    CHECK(try_divide(b * g, d).has_value());
    ++done;
  }
}
