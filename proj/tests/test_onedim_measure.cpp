#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/random_stream.hpp"

using namespace degdyn;
using namespace degdyn::onedim;

namespace {

EmpiricalMeasure exact_circle(int n) {
  EmpiricalMeasure m;
  for (int k = 0; k < n; ++k) {
    double a = 2.0 * M_PI * k / n;
    m.points.push_back({std::cos(a), std::sin(a)});
  }
  return m;
}

double arcsine_ks(const EmpiricalMeasure& m) {
  std::vector<double> xs;
  for (const auto& z : m.points) xs.push_back(z.real());
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double F = 0.5 + std::asin(std::clamp(xs[i] / 2.0, -1.0, 1.0)) / M_PI;
    ks = std::max(ks, std::max(std::abs(F - (double)i / xs.size()),
                               std::abs(F - (double)(i + 1) / xs.size())));
  }
  return ks;
}

}  // namespace

TEST_CASE("sampler on z^2: uniform circle measure") {
  SamplerParams sp;
  sp.depth = 40;
  sp.count = 20000;
  sp.start = {2.0, 0.0};
  sp.seed = 1;
  sp.threads = 2;
  auto m = sample_measure(Poly1C::parse("z^2"), sp);
  REQUIRE((int)m.points.size() == sp.count);

  double worst = 0.0;
  cdouble m1 = 0.0, m2 = 0.0;
  for (const auto& z : m.points) {
    worst = std::max(worst, std::abs(std::abs(z) - 1.0));
    m1 += z;
    m2 += z * z;
  }
  m1 /= (double)sp.count;
  m2 /= (double)sp.count;
  double bound = 4.0 / std::sqrt((double)sp.count);
  CHECK(worst <= 1e-8);
  CHECK(std::abs(m1) <= bound);
  CHECK(std::abs(m2) <= bound);
  CHECK(m.provenance.seed == sp.seed);
  CHECK(m.provenance.depth == sp.depth);
}

TEST_CASE("sampler determinism and thread independence") {
  SamplerParams sp;
  sp.depth = 20;
  sp.count = 500;
  sp.seed = 77;
  Poly1C f = Poly1C::parse("z^2 - 2");
  sp.threads = 1;
  auto a = sample_measure(f, sp);
  sp.threads = 4;
  auto b = sample_measure(f, sp);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
}

TEST_CASE("sampler on z^2 - 2: KS distance to the arcsine law") {
  SamplerParams sp;
  sp.depth = 40;
  sp.count = 100000;
  sp.start = {5.0, 0.0};
  sp.seed = 2;
  sp.threads = 4;
  auto m = sample_measure(Poly1C::parse("z^2 - 2"), sp);
  CHECK(arcsine_ks(m) <= 0.02);
}

TEST_CASE("exceptional start rejected with a named point") {
  SamplerParams sp;
  sp.depth = 10;
  sp.count = 10;
  sp.start = {0.0, 0.0};
  CHECK_THROWS_WITH_AS(sample_measure(Poly1C::parse("z^2"), sp),
                       doctest::Contains("exceptional"), InputError);
}

TEST_CASE("pushforward invariance of the sampled measure") {
  SamplerParams sp;
  sp.depth = 40;
  sp.count = 60000;
  sp.seed = 5;
  sp.threads = 4;
  Poly1C f = Poly1C::parse("z^2 - 2");
  auto m = sample_measure(f, sp);
  EmpiricalMeasure pushed;
  pushed.points.reserve(m.points.size());
  for (const auto& z : m.points) pushed.points.push_back(f(z));
  // empirical form of f_* mu = mu, within sampler tolerance
  CHECK(num::measure_distance(m, pushed) <= 0.03);
}

TEST_CASE("uniform branch choice: first-step branch frequencies") {
  // depth-1 samples of z^2 - 2 from a = 5 land on the two preimages of 5
  SamplerParams sp;
  sp.depth = 1;
  sp.count = 40000;
  sp.start = {5.0, 0.0};
  sp.seed = 3;
  auto m = sample_measure(Poly1C::parse("z^2 - 2"), sp);
  long plus = 0;
  for (const auto& z : m.points) plus += z.real() > 0 ? 1 : 0;
  double sigma = std::sqrt(0.25 * (double)sp.count);
  CHECK(std::abs((double)plus - 0.5 * sp.count) <= 4.0 * sigma);
}

TEST_CASE("two independent samples are close in probe distance") {
  SamplerParams sp;
  sp.depth = 40;
  sp.count = 100000;
  sp.seed = 9;
  sp.threads = 4;
  Poly1C f = Poly1C::parse("z^2 - 2");
  auto a = sample_measure(f, sp);
  sp.seed = 10;
  auto b = sample_measure(f, sp);
  CHECK(num::measure_distance(a, b) <= 0.02);
}

TEST_CASE("preimage equidistribution") {
  Poly1C cheb = Poly1C::parse("z^2 - 2");
  SamplerParams sp;
  sp.depth = 40;
  sp.count = 60000;
  sp.seed = 9;
  sp.threads = 4;
  auto ref = sample_measure(cheb, sp);

  SUBCASE("z^2-2 from a=5: decay to <= 0.05 by n = 12") {
    std::vector<int> depths;
    for (int n = 1; n <= 12; ++n) depths.push_back(n);
    auto rep = preimage_equidistribution(cheb, {5.0, 0.0}, depths, ref);
    CHECK(rep.decreasing_within_slack);
    CHECK(rep.distances.back() <= 0.05);
  }
  SUBCASE("z^2 from a=1: roots of unity equidistribute exactly") {
    auto rep = preimage_equidistribution(Poly1C::parse("z^2"), {1.0, 0.0}, {6},
                                         exact_circle(4096));
    CHECK(rep.distances[0] <= 1e-6);
  }
  SUBCASE("exceptional start rejected") {
    CHECK_THROWS_AS(preimage_equidistribution(Poly1C::parse("z^2"), {0.0, 0.0},
                                              {4}, exact_circle(64)),
                    InputError);
  }
  SUBCASE("tree guard") {
    CHECK_THROWS_AS(
        preimage_equidistribution(cheb, {5.0, 0.0}, {15}, exact_circle(64)),
        InputError);
  }
}

TEST_CASE("mixing experiment") {
  SamplerParams sp;
  sp.depth = 36;
  sp.count = 100000;
  sp.seed = 12;
  sp.threads = 4;

  SUBCASE("z^2 with phi = psi = Re z: zero correlations within noise") {
    auto rep = mixing_experiment(Poly1C::parse("z^2"), "re", "re", 8, sp);
    CHECK(rep.correlations[0] == doctest::Approx(0.5).epsilon(0.01));  // Var(Re z)
    for (int n = 1; n <= 8; ++n)
      CHECK(std::abs(rep.correlations[(std::size_t)n]) <= rep.noise_floor);
  }
  SUBCASE("z^2 - 2 with smooth bumps: fitted decay beats -log 2 + 0.2") {
    auto rep = mixing_experiment(Poly1C::parse("z^2 - 2"), "gauss:0.5,0.3,0.7",
                                 "gauss:-0.4,0.2,0.6", 10, sp);
    REQUIRE(rep.fitted_exponent.has_value());
    CHECK(*rep.fitted_exponent <= -std::log(2.0) + 0.2);
  }
  SUBCASE("unknown observable rejected") {
    CHECK_THROWS_AS(mixing_experiment(Poly1C::parse("z^2"), "what", "re", 4, sp),
                    InputError);
  }
}

TEST_CASE("ball mass table") {
  SamplerParams sp;
  sp.depth = 40;
  sp.count = 50000;
  sp.seed = 21;
  sp.threads = 4;

  SUBCASE("z^2: mass proportional to r (arc length)") {
    auto m = sample_measure(Poly1C::parse("z^2"), sp);
    auto rep = ball_mass_check(m, {0.4, 0.2, 0.1, 0.05}, 1.0);
    CHECK(!rep.ratio_blowup);
    for (const auto& row : rep.rows) CHECK(row.included);
  }
  SUBCASE("z^2 - 2 with the measured exponent: bounded ratio") {
    auto m = sample_measure(Poly1C::parse("z^2 - 2"), sp);
    auto rep = ball_mass_check(m, {0.5, 0.25, 0.125, 0.0625, 0.03125}, 0.45);
    CHECK(!rep.ratio_blowup);
  }
  SUBCASE("radius below sample resolution is excluded and reported") {
    auto m = sample_measure(Poly1C::parse("z^2"), sp);
    auto rep = ball_mass_check(m, {0.1, 1e-12}, 1.0);
    CHECK(rep.rows[0].included);
    CHECK(!rep.rows[1].included);
  }
}

TEST_CASE("sampler on a rational map: 1/z^2 has the circle measure") {
  // conjugate of z^2 by 1/z: same equilibrium measure as the power map
  RatMap1C f = RatMap1C::make(Poly1C::parse("1"), Poly1C::parse("z^2"));
  SamplerParams sp;
  sp.depth = 40;
  sp.count = 5000;
  sp.seed = 8;
  sp.threads = 2;
  auto m = sample_measure(f, sp);
  double worst = 0.0;
  for (const auto& z : m.points) worst = std::max(worst, std::abs(std::abs(z) - 1.0));
  CHECK(worst <= 1e-6);
}
