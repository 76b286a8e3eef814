#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>

#include "degdyn/measure_distance.hpp"
#include "degdyn/random_stream.hpp"
#include "degdyn/roots.hpp"
#include "degdyn/scaled_complex.hpp"

using namespace degdyn::num;

namespace {

// Independent oracle: eigenvalues of the companion matrix.
std::vector<cdouble> companion_roots(const Poly1C& p) {
  int n = p.degree();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -p.c[(std::size_t)i] / p.c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cdouble> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

double match_distance(std::vector<cdouble> a, std::vector<cdouble> b) {
  // greedy bipartite match, fine for well-separated roots
  double worst = 0.0;
  for (const auto& x : a) {
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    worst = std::max(worst, best);
    b.erase(b.begin() + (long)arg);
  }
  return worst;
}

}  // namespace

TEST_CASE("random stream determinism and independence") {
  RandomStream a(7, 0), b(7, 0), c(7, 1);
  bool same = true, differ = false;
  for (int i = 0; i < 1000; ++i) {
    auto x = a.next_u64(), y = b.next_u64();
    same = same && (x == y);
    differ = differ || (x != c.next_u64());
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("choice is uniform within 4 sigma") {
  const int lambda = 5;
  const int N = 1000000;
  RandomStream rs(42, 3);
  std::vector<int> counts(lambda, 0);
  for (int i = 0; i < N; ++i) counts[(std::size_t)rs.choice(lambda)]++;
  double p = 1.0 / lambda;
  double sigma = std::sqrt(N * p * (1 - p));
  for (int k = 0; k < lambda; ++k)
    CHECK(std::abs(counts[(std::size_t)k] - N * p) <= 4 * sigma);
}

TEST_CASE("roots: fixed cases") {
  SUBCASE("z^2 - 1") {
    RootSet r = roots(Poly1C({-1.0, 0.0, 1.0}));
    REQUIRE(r.roots.size() == 2);
    CHECK(r.max_residual < 1e-12);
    std::vector<cdouble> expect = {1.0, -1.0};
    CHECK(match_distance(expect, r.roots) < 1e-12);
  }
  SUBCASE("z^8: one cluster of multiplicity 8") {
    std::vector<cdouble> c(9, 0.0);
    c[8] = 1.0;
    RootSet r = roots(Poly1C(c));
    REQUIRE(r.roots.size() == 1);
    CHECK(r.multiplicity[0] == 8);
    CHECK(std::abs(r.roots[0]) < 1e-7);
  }
  SUBCASE("product (z - j/10), j=1..10") {
    Poly1C p({1.0});
    std::vector<cdouble> expect;
    for (int j = 1; j <= 10; ++j) {
      p = p * Poly1C({-j / 10.0, 1.0});
      expect.push_back(j / 10.0);
    }
    RootSet r = roots(p);
    REQUIRE(r.roots.size() == 10);
    CHECK(match_distance(expect, r.roots) < 1e-10);
    CHECK(match_distance(companion_roots(p), r.roots) < 1e-8);
  }
  SUBCASE("degree < 1 rejected") {
    CHECK_THROWS_AS(roots(Poly1C({1.0})), std::invalid_argument);
  }
}

TEST_CASE("roots: vieta checks + companion oracle on random polynomials") {
  RandomStream rs(123, 9);
  for (int iter = 0; iter < 20; ++iter) {
    int deg = 2 + (int)rs.choice(10);
    std::vector<cdouble> c((std::size_t)deg + 1);
    for (auto& x : c) x = rs.in_rectangle(-2, 2, -2, 2);
    if (std::abs(c.back()) < 0.2) c.back() += 1.0;
    Poly1C p(c);
    RootSet r = roots(p);
    auto all = r.expanded();
    REQUIRE((int)all.size() == deg);

    cdouble sum = 0.0, prod = 1.0;
    for (auto z : all) {
      sum += z;
      prod *= z;
    }
    cdouble vieta_sum = -p.c[(std::size_t)deg - 1] / p.c.back();
    cdouble vieta_prod = p.c[0] / p.c.back();
    if (deg % 2) vieta_prod = -vieta_prod;
    CHECK(std::abs(sum - vieta_sum) < 1e-8 * (1.0 + std::abs(vieta_sum)));
    CHECK(std::abs(prod - vieta_prod) < 1e-8 * (1.0 + std::abs(vieta_prod)));
    CHECK(match_distance(companion_roots(p), all) < 1e-6);
  }
}

TEST_CASE("scaled complex survives doubly exponential growth") {
  // z <- z^2 starting at 2: after 60 squarings log|z| = 2^60 log 2
  ScaledComplex z(cdouble{2.0, 0.0});
  for (int i = 0; i < 60; ++i) z = z * z;
  double expect = std::pow(2.0, 60) * std::log(2.0);
  CHECK(z.log_abs() == doctest::Approx(expect).epsilon(1e-12));
  ScaledComplex s = z + ScaledComplex(cdouble{1.0, 0.0});
  CHECK(s.log_abs() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("measure distance") {
  SUBCASE("identical clouds -> 0") {
    EmpiricalMeasure m;
    RandomStream rs(5, 5);
    for (int i = 0; i < 200; ++i) m.points.push_back(rs.unit_disk());
    CHECK(measure_distance(m, m) == 0.0);
  }
  SUBCASE("dirac at 0 vs uniform circle, probe at 0.5") {
    EmpiricalMeasure dirac, circle;
    dirac.points.assign(1, cdouble{0.0, 0.0});
    const int N = 4096;
    for (int k = 0; k < N; ++k) {
      double a = 2.0 * M_PI * k / N;
      circle.points.push_back({std::cos(a), std::sin(a)});
    }
    ProbeSet ps;
    ps.probes = {cdouble{0.5, 0.0}};
    // circle potential vanishes inside; dirac contributes log 0.5
    CHECK(measure_distance(dirac, circle, ps) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-6));
  }
  SUBCASE("pseudometric: symmetry and triangle on fixed probes") {
    RandomStream rs(77, 1);
    auto cloud = [&](int n) {
      EmpiricalMeasure m;
      for (int i = 0; i < n; ++i) m.points.push_back(rs.in_rectangle(-1, 1, -1, 1));
      return m;
    };
    EmpiricalMeasure a = cloud(50), b = cloud(80), c = cloud(60);
    EmpiricalMeasure all;
    for (const auto* m : {&a, &b, &c})
      all.points.insert(all.points.end(), m->points.begin(), m->points.end());
    ProbeSet ps = make_probes(all, 11);
    double ab = measure_distance(a, b, ps);
    double ba = measure_distance(b, a, ps);
    double ac = measure_distance(a, c, ps);
    double cb = measure_distance(c, b, ps);
    CHECK(ab == ba);
    CHECK(ab <= ac + cb + 1e-15);
  }
  SUBCASE("probe collision is perturbed and reported") {
    EmpiricalMeasure m1, m2;
    m1.points = {cdouble{0.5, 0.0}, cdouble{-0.5, 0.0}};
    m2.points = {cdouble{0.25, 0.0}, cdouble{-0.25, 0.0}};
    ProbeSet ps;
    ps.probes = {cdouble{0.5, 0.0}};
    int collisions = 0;
    double d = measure_distance(m1, m2, ps, &collisions);
    CHECK(collisions == 1);
    CHECK(std::isfinite(d));
  }
}
