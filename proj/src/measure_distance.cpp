#include "degdyn/measure_distance.hpp"

#include <algorithm>
#include <cmath>

#include "degdyn/random_stream.hpp"

namespace degdyn::num {

using cdouble = std::complex<double>;

ProbeSet make_probes(const EmpiricalMeasure& ref, std::uint64_t seed) {
  ProbeSet ps;
  if (ref.points.empty()) return ps;
  cdouble centroid = 0.0;
  for (const auto& x : ref.points) centroid += x;
  centroid /= (double)ref.points.size();
  double hull = 0.0;
  for (const auto& x : ref.points) hull = std::max(hull, std::abs(x - centroid));
  if (hull == 0.0) hull = 1.0;

  for (int i = 0; i < 16; ++i) {
    double a = 2.0 * M_PI * (i + 0.5) / 16.0;
    ps.probes.push_back(centroid + 2.0 * hull * cdouble{std::cos(a), std::sin(a)});
  }
  RandomStream rs(seed, 0xb10b);
  double clear = 0.2 * hull;
  for (int i = 0; i < 16; ++i) {
    // convex combination of three cloud points: stays in the hull
    cdouble a = ref.points[rs.choice(ref.points.size())];
    cdouble b = ref.points[rs.choice(ref.points.size())];
    cdouble c = ref.points[rs.choice(ref.points.size())];
    double u = rs.uniform(), v = rs.uniform();
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    cdouble p = a + u * (b - a) + v * (c - a);
    // log-potentials blow up on the cloud itself; contract toward the
    // centroid until the probe has clearance (or provably cannot get it,
    // e.g. interval-supported clouds)
    for (int step = 0; step < 12; ++step) {
      double dmin = 1e300;
      for (const auto& x : ref.points) dmin = std::min(dmin, std::abs(p - x));
      if (dmin > clear) break;
      p = centroid + 0.7 * (p - centroid);
    }
    ps.probes.push_back(p);
  }
  return ps;
}

static double potential(const EmpiricalMeasure& m, cdouble p) {
  double acc = 0.0;
  bool uniform = m.weights.empty();
  double w0 = uniform ? 1.0 / (double)m.points.size() : 0.0;
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    double d = std::abs(p - m.points[i]);
    acc += (uniform ? w0 : m.weights[i]) * std::log(d);
  }
  return acc;
}

double measure_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                        const ProbeSet& probes, int* probe_collisions) {
  int collisions = 0;
  double dist = 0.0;
  for (cdouble p : probes.probes) {
    // A probe sitting on a sample point makes log|.| blow up; nudge it.
    auto collides = [&](const EmpiricalMeasure& m) {
      for (const auto& x : m.points)
        if (std::abs(p - x) < 1e-14) return true;
      return false;
    };
    if (collides(mu) || collides(nu)) {
      ++collisions;
      p += cdouble{3e-9, 2e-9};
    }
    dist = std::max(dist, std::abs(potential(mu, p) - potential(nu, p)));
  }
  if (probe_collisions) *probe_collisions = collisions;
  return dist;
}

double measure_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  EmpiricalMeasure both;
  both.points = mu.points;
  both.points.insert(both.points.end(), nu.points.begin(), nu.points.end());
  return measure_distance(mu, nu, make_probes(both, 0x9e3779b9u));
}

}  // namespace degdyn::num
