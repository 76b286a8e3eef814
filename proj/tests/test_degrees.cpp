#include "doctest.h"

#include <cmath>

#include "degdyn/degrees.hpp"
#include "degdyn/map_parser.hpp"
#include "degdyn/random_stream.hpp"
#include "degdyn/roots.hpp"

using namespace degdyn;
using namespace degdyn::mapalg;
using namespace degdyn::degrees;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

AffineMap fib_map() { return parse_affine("(z*w + 1, z + 2)", 2); }

}  // namespace

TEST_CASE("degree drop on P2: d = [2, 3], not stable") {
  auto rep = degree_sequence(homogenize_proj(fib_map()), 2);
  REQUIRE(rep.d.size() == 2);
  CHECK(rep.d[0] == 2);
  CHECK(rep.d[1] == 3);
  CHECK(!rep.stable);
  CHECK(rep.exact_n == 2);
}

TEST_CASE("P3 involution: d1 = 3, d2 = 1") {
  ProjMap g = parse_proj("[z1*z2*z3 : z0*z2*z3 : z0*z1*z3 : z0*z1*z2]", 3);
  auto rep = degree_sequence(g, 2);
  CHECK(rep.d[0] == 3);
  CHECK(rep.d[1] == 1);
  CHECK(!rep.stable);
}

TEST_CASE("Fibonacci bidegrees on P1xP1, golden lambda1 at N=30") {
  auto rep = degree_sequence(homogenize_biproj(fib_map()), 30);
  REQUIRE((int)rep.B.size() == 30);
  CHECK(rep.stable);
  // B_n = [[F_{n+1}, F_n], [F_n, F_{n-1}]]
  long long F[33];
  F[0] = 0;
  F[1] = 1;
  for (int i = 2; i <= 32; ++i) F[i] = F[i - 1] + F[i - 2];
  for (int n = 1; n <= 30; ++n) {
    CHECK(rep.B[(std::size_t)n - 1][0][0] == F[n + 1]);
    CHECK(rep.B[(std::size_t)n - 1][0][1] == F[n]);
    CHECK(rep.B[(std::size_t)n - 1][1][1] == F[n - 1]);
  }
  CHECK(std::abs(rep.lambda1 - kGolden) < 1e-6);
}

TEST_CASE("Henon degree sequence is stable 2^n") {
  AffineMap h = parse_affine("(z^2 + 1 - w, z)", 2);
  auto rep = degree_sequence(homogenize_proj(h), 6);
  std::vector<long long> expect = {2, 4, 8, 16, 32, 64};
  CHECK(rep.d == expect);
  CHECK(rep.stable);
  CHECK(rep.lambda1 == doctest::Approx(2.0));
}

TEST_CASE("submultiplicativity d_{n+m} <= d_n d_m over computed pairs") {
  for (const char* txt : {"(z*w + 1, z + 2)", "(w, z^2 + 1)", "(z^2 + w, z*w)",
                          "(z*w + w^2, z)"}) {
    auto rep = degree_sequence(homogenize_proj(parse_affine(txt, 2)), 10);
    int N = rep.exact_n;  // property asserted on the exact prefix
    for (int n = 1; n <= N; ++n)
      for (int m = 1; n + m <= N; ++m)
        CHECK(rep.d[(std::size_t)(n + m - 1)] <=
              rep.d[(std::size_t)n - 1] * rep.d[(std::size_t)m - 1]);
  }
}

TEST_CASE("stability signature: stable implies lambda1 = d1 exactly") {
  auto rep = degree_sequence(homogenize_proj(parse_affine("(w^2, z^2 + w^2)", 2)), 10);
  CHECK(rep.stable);
  CHECK(rep.lambda1 == (double)rep.d[0]);
}

TEST_CASE("birational invariance of lambda1 across models at N=14") {
  auto p2 = degree_sequence(homogenize_proj(fib_map()), 14);
  auto bp = degree_sequence(homogenize_biproj(fib_map()), 14);
  CHECK(std::abs(p2.lambda1 - bp.lambda1) < 1e-3);
}

TEST_CASE("topological degree by elimination") {
  SUBCASE("Henon is birational") {
    CHECK(topological_degree(parse_affine("(z^2 + 1 - w, z)", 2), 3, 17) == 1);
  }
  SUBCASE("(w^2, z^2 + w^3) has 4 preimages, vs direct oracle") {
    AffineMap f = parse_affine("(w^2, z^2 + w^3)", 2);
    CHECK(topological_degree(f, 3, 17) == 4);
    // independent oracle: solve w^2 = u, then z^2 = v - w^3, count verified
    num::RandomStream rs(4242, 0);
    for (int t = 0; t < 3; ++t) {
      std::complex<double> u = 2.0 * rs.unit_disk(), v = 2.0 * rs.unit_disk();
      auto wr = num::roots(num::Poly1C({-u, 0.0, 1.0}));
      int count = 0;
      for (auto w : wr.expanded()) {
        auto zr = num::roots(num::Poly1C({w * w * w - v, 0.0, 1.0}));
        count += (int)zr.expanded().size();
      }
      CHECK(count == 4);
    }
  }
  SUBCASE("(z^2, w^2) product map") {
    CHECK(topological_degree(parse_affine("(z^2, w^2)", 2), 3, 17) == 4);
  }
  SUBCASE("non-dominant map rejected") {
    CHECK_THROWS_AS(topological_degree(parse_affine("(z, z)", 2), 3, 17), InputError);
  }
}

TEST_CASE("skew degrees max-product formula") {
  // oracle: enumerate all index subsets
  auto oracle = [](const std::vector<long>& d) {
    std::vector<double> best(d.size() + 1, 0.0);
    best[0] = 1.0;
    for (std::size_t mask = 0; mask < (1u << d.size()); ++mask) {
      double prod = 1.0;
      std::size_t bits = 0;
      for (std::size_t i = 0; i < d.size(); ++i)
        if (mask >> i & 1) {
          prod *= (double)d[i];
          ++bits;
        }
      best[bits] = std::max(best[bits], prod);
    }
    return best;
  };
  CHECK(skew_degrees({2, 3}) == std::vector<double>{1, 3, 6});
  CHECK(skew_degrees({2}) == std::vector<double>{1, 2});
  CHECK(skew_degrees({2, 2, 5}) == oracle({2, 2, 5}));
  CHECK(skew_degrees({2, 2, 5}) == std::vector<double>{1, 5, 10, 20});
  CHECK_THROWS_AS(skew_degrees({}), InputError);

  SUBCASE("product formula: concatenation = max-convolution") {
    std::vector<long> a = {2, 7}, b = {3, 4, 5};
    std::vector<long> both = {2, 7, 3, 4, 5};
    auto la = skew_degrees(a), lb = skew_degrees(b), lab = skew_degrees(both);
    for (std::size_t l = 0; l < lab.size(); ++l) {
      double conv = 0.0;
      for (std::size_t i = 0; i <= l; ++i) {
        std::size_t j = l - i;
        if (i < la.size() && j < lb.size()) conv = std::max(conv, la[i] * lb[j]);
      }
      CHECK(lab[l] == doctest::Approx(conv));
    }
  }
}

TEST_CASE("hyperbolicity verdict") {
  auto v1 = hyperbolicity_verdict({1.0, kGolden, 1.0});
  CHECK(v1.dominant_l == 1);
  CHECK(v1.entropy_bound == doctest::Approx(std::log(kGolden)));
  auto v2 = hyperbolicity_verdict({1.0, 2.0, 4.0});
  CHECK(v2.dominant_l == 2);
  CHECK(v2.entropy_bound == doctest::Approx(std::log(4.0)));
  auto v3 = hyperbolicity_verdict({1.0, 2.0, 2.0});
  CHECK(!v3.dominant_l.has_value());
  CHECK(v1.concavity_ok);
  CHECK(v2.concavity_ok);
  CHECK(v3.concavity_ok);
}

TEST_CASE("monomial maps") {
  SUBCASE("Fibonacci matrix") {
    auto rep = monomial_degrees({{1, 1}, {1, 0}}, 20);
    CHECK(rep.lambda1 == doctest::Approx(kGolden).epsilon(1e-12));
    CHECK(rep.lambda_k == doctest::Approx(1.0));
    REQUIRE((int)rep.bidegrees.size() == 20);
    CHECK(rep.sequence_matches);
  }
  SUBCASE("2 Id") {
    auto rep = monomial_degrees({{2, 0}, {0, 2}}, 6);
    CHECK(rep.lambda1 == doctest::Approx(2.0));
    CHECK(rep.lambda_k == doctest::Approx(4.0));
    CHECK(rep.sequence_matches);
  }
  SUBCASE("[[2,1],[1,1]]: char poly x^2 - 3x + 1") {
    auto rep = monomial_degrees({{2, 1}, {1, 1}}, 8);
    CHECK(rep.lambda1 == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    CHECK(rep.lambda_k == doctest::Approx(1.0));
    CHECK(rep.sequence_matches);
  }
  SUBCASE("negative entries: inverse Fibonacci matrix") {
    auto rep = monomial_degrees({{0, 1}, {1, -1}}, 10);
    CHECK(rep.lambda1 == doctest::Approx(kGolden).epsilon(1e-12));
    CHECK(rep.sequence_matches);
  }
  SUBCASE("permutation matrix has spectral radius 1") {
    auto rep = monomial_degrees({{0, 1}, {1, 0}}, 4);
    CHECK(rep.lambda1 == doctest::Approx(1.0));
    CHECK(rep.lambda_k == doctest::Approx(1.0));
    CHECK(rep.sequence_matches);
  }
  SUBCASE("k=3 gives conjectural lambdas only") {
    auto rep = monomial_degrees({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 0);
    CHECK(rep.lambda_k == doctest::Approx(2.0));
    CHECK(rep.conjectural_lambdas.size() == 4);
  }
  SUBCASE("singular matrix rejected") {
    CHECK_THROWS_AS(monomial_degrees({{1, 1}, {1, 1}}, 2), InputError);
  }
}

TEST_CASE("fixed point counting") {
  SUBCASE("(z^2, w^2): 4 affine, Lefschetz total 7") {
    auto fc = fixed_point_count(parse_affine("(z^2, w^2)", 2), 1, 5, true);
    CHECK(fc.affine_count == 4);
    REQUIRE(fc.lefschetz_total.has_value());
    CHECK(*fc.lefschetz_total == 7);
  }
  SUBCASE("Henon with c = 1: double fixed point, count 2") {
    auto fc = fixed_point_count(parse_affine("(z^2 + 1 - w, z)", 2), 1, 5, false);
    CHECK(fc.affine_count == 2);
  }
  SUBCASE("Henon period 2") {
    // f^2(x) = x includes the two fixed points; degree-4 system
    auto fc = fixed_point_count(parse_affine("(z^2 - 1 - w, z)", 2), 2, 5, false);
    CHECK(fc.affine_count == 4);
  }
  SUBCASE("n = 0 rejected") {
    CHECK_THROWS_AS(fixed_point_count(parse_affine("(z^2, w^2)", 2), 0, 5, false),
                    InputError);
  }
}

TEST_CASE("quadratic classification") {
  SUBCASE("(w+1, zw+2) -> (golden, 1)") {
    auto c = classify_quadratic(parse_affine("(w + 1, z*w + 2)", 2), 7);
    CHECK(std::abs(c.lambda1 - kGolden) < 1e-6);
    CHECK(c.lambda2 == doctest::Approx(1.0));
    CHECK(c.matched_class == "(golden,1)");
  }
  SUBCASE("(w+1, w(w-z)+z+1) -> (2, 1)") {
    auto c = classify_quadratic(parse_affine("(w + 1, w*(w - z) + z + 1)", 2), 7);
    CHECK(c.lambda1 == doctest::Approx(2.0));
    CHECK(c.lambda2 == doctest::Approx(1.0));
    CHECK(c.matched_class == "(2,1)");
  }
  SUBCASE("(w^2, z^2+w^2) -> (2, 4)") {
    auto c = classify_quadratic(parse_affine("(w^2, z^2 + w^2)", 2), 7);
    CHECK(c.lambda1 == doctest::Approx(2.0));
    CHECK(c.lambda2 == doctest::Approx(4.0));
    CHECK(c.matched_class == "(2,4)");
  }
  SUBCASE("(w, z^2+1) -> (sqrt2, 2)") {
    auto c = classify_quadratic(parse_affine("(w, z^2 + 1)", 2), 7);
    CHECK(std::abs(c.lambda1 - std::sqrt(2.0)) < 1e-6);
    CHECK(c.lambda2 == doctest::Approx(2.0));
    CHECK(c.matched_class == "(sqrt2,2)");
  }
  SUBCASE("(z^2+w, zw) -> (2, 3)") {
    auto c = classify_quadratic(parse_affine("(z^2 + w, z*w)", 2), 7);
    CHECK(c.lambda1 == doctest::Approx(2.0));
    CHECK(c.lambda2 == doctest::Approx(3.0));
    CHECK(c.matched_class == "(2,3)");
  }
  SUBCASE("(zw+w^2, z): values match (golden, 2), no stable model") {
    auto c = classify_quadratic(parse_affine("(z*w + w^2, z)", 2), 7);
    CHECK(std::abs(c.lambda1 - kGolden) < 1e-6);
    CHECK(c.lambda2 == doctest::Approx(2.0));
    CHECK(c.matched_class.empty());
    CHECK(!c.warning.empty());
  }
  SUBCASE("cubic input rejected") {
    CHECK_THROWS_AS(classify_quadratic(parse_affine("(w^2, z^2 + w^3)", 2), 7),
                    InputError);
  }
}

TEST_CASE("degree report always carries entropy bound and concavity") {
  for (const char* txt : {"(z*w + 1, z + 2)", "(z^2 + 1 - w, z)"}) {
    auto rep = degree_sequence(homogenize_proj(parse_affine(txt, 2)), 8);
    CHECK(rep.lambdas.size() >= 2);
    CHECK(rep.lambdas[0] == 1.0);
    CHECK(rep.entropy_bound ==
          doctest::Approx(std::log(*std::max_element(rep.lambdas.begin(),
                                                     rep.lambdas.end()))));
    CHECK(rep.concavity_ok);
  }
}

TEST_CASE("non-dominant maps are rejected by degree_sequence") {
  AffineMap f = parse_affine("(z, z)", 2);
  CHECK_THROWS_AS(degree_sequence(homogenize_proj(f), 4), InputError);
  CHECK_THROWS_AS(degree_sequence(homogenize_biproj(f), 4), InputError);
  // dominance probe accepts the usual suspects
  CHECK(is_dominant(homogenize_proj(parse_affine("(z*w + 1, z + 2)", 2))));
  CHECK(is_dominant(parse_proj("[y*z : x*z : x*y]", 2)));
}

TEST_CASE("absurd N degrades to guard_hit with the largest safe prefix") {
  auto rep = degree_sequence(homogenize_proj(parse_affine("(z^2 + 1 - w, z)", 2)), 200);
  CHECK(rep.guard_hit);
  CHECK((int)rep.d.size() < 200);
  CHECK(rep.d.size() > 30);  // still a long exact+extended prefix
  CHECK(rep.stable);
  auto bi = degree_sequence(homogenize_biproj(parse_affine("(z*w + 1, z + 2)", 2)), 200);
  CHECK(bi.guard_hit);
  CHECK(bi.B.size() > 50);
}

TEST_CASE("positive-dimensional fixed locus is a numerical error") {
  // (zw, w^2) fixes the whole line {w = 1}
  CHECK_THROWS_AS(fixed_point_count(parse_affine("(z*w, w^2)", 2), 1, 5, false),
                  NumericalError);
}
