#include <algorithm>
#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/roots.hpp"
#include "degdyn/scaled_complex.hpp"

namespace degdyn::onedim {

using num::ScaledComplex;

namespace {

// Newton ratio (f^n(z) - z) / ((f^n)'(z) - 1) evaluated by orbit iteration in
// scaled arithmetic; expanding the coefficients of f^n is numerically dead
// already for moderate n (catastrophic cancellation near the Julia set).
cdouble iterate_ratio(const Poly1C& f, const Poly1C& df, int n, cdouble z) {
  ScaledComplex w(z);
  ScaledComplex q(cdouble{1.0, 0.0});
  for (int s = 0; s < n; ++s) {
    q = num::eval_scaled(df.c, w) * q;
    w = num::eval_scaled(f.c, w);
  }
  ScaledComplex num_ = w - ScaledComplex(z);
  ScaledComplex den = q - ScaledComplex(cdouble{1.0, 0.0});
  if (den.is_zero()) return cdouble{1e-300, 0.0};
  return (num_ / den).to_complex();
}

}  // namespace

PeriodicReport periodic_points(const Poly1C& f, int n, std::uint64_t seed,
                               const EmpiricalMeasure* reference) {
  int d = f.degree();
  if (d < 2) throw InputError("periodic_points: degree must be >= 2");
  if (n < 1) throw InputError("periodic_points: period must be >= 1");
  double total = std::pow((double)d, (double)n);
  if (total > 1e4) throw InputError("periodic_points: d^n exceeds the 10^4 guard");

  int m = (int)std::llround(total);
  Poly1C df = f.derivative();
  double radius = auto_escape_radius(f);
  bool converged = false;
  std::vector<cdouble> roots = num::aberth_functional(
      m, radius, [&](cdouble z) { return iterate_ratio(f, df, n, z); }, &converged,
      600);
  for (auto& z : roots)
    for (int it = 0; it < 3; ++it) {
      cdouble r = iterate_ratio(f, df, n, z);
      if (std::abs(r) < 1.0) z -= r;
    }

  PeriodicReport rep;
  rep.n = n;
  rep.root_count = m;

  std::vector<char> claimed((std::size_t)m, 0);
  std::vector<cdouble> repelling_cloud;
  long repelling = 0;
  for (int i = 0; i < m; ++i) {
    cdouble z = roots[(std::size_t)i];
    // orbit of length n with running multiplier
    std::vector<cdouble> orbit;
    orbit.reserve((std::size_t)n + 1);
    cdouble y = z, mult_n{1.0, 0.0}, mult_p{1.0, 0.0};
    int period = n;
    for (int s = 0; s < n; ++s) {
      orbit.push_back(y);
      cdouble step = df(y);
      mult_n *= step;
      y = f(y);
      if (period == n) {
        mult_p *= step;
        if (std::abs(y - z) < 1e-8 * (1.0 + std::abs(z))) period = s + 1;
      }
    }
    rep.max_residual = std::max(rep.max_residual, std::abs(y - z));
    if (std::abs(mult_n) > 1.0 + 1e-9) {
      ++repelling;
      repelling_cloud.push_back(z);
    }

    if (claimed[(std::size_t)i]) continue;
    for (int s = 1; s < period; ++s)
      for (int j = i + 1; j < m; ++j)
        if (!claimed[(std::size_t)j] &&
            std::abs(roots[(std::size_t)j] - orbit[(std::size_t)s]) <
                1e-7 * (1.0 + std::abs(orbit[(std::size_t)s])))
          claimed[(std::size_t)j] = 1;

    PeriodicOrbit orb;
    orb.period = period;
    orb.representative = z;
    orb.multiplier = mult_p;
    double am = std::abs(mult_p);
    orb.type = am > 1.0 + 1e-9   ? PeriodicOrbit::Type::Repelling
               : am < 1.0 - 1e-9 ? PeriodicOrbit::Type::Attracting
                                 : PeriodicOrbit::Type::Indifferent;
    rep.orbits.push_back(orb);
  }
  rep.repelling_fraction = (double)repelling / (double)m;

  if (reference && !repelling_cloud.empty()) {
    EmpiricalMeasure nu;
    nu.points = std::move(repelling_cloud);
    rep.distance_to_reference = num::measure_distance(
        nu, *reference, num::make_probes(*reference, seed ^ 0xe41));
  }
  return rep;
}

}  // namespace degdyn::onedim
