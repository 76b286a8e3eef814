#include <algorithm>
#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/parallel.hpp"
#include "degdyn/random_stream.hpp"

namespace degdyn::onedim {

// Pair exponent log|G(y) - G(x)| / log d(x*, y) over random close pairs that
// straddle the filled-Julia boundary: x is a boundary sample, y sits outside
// at distance h in a cone around the outward gradient direction, and x* is
// the bisected crossing point along [x, y]. Distances are chordal (the P^1
// metric); the 5th percentile tracks the worst local exponent, which governs
// the global Hoelder class of G.
HolderEstimate holder_estimate(const Poly1C& f_in, const HolderParams& p) {
  Poly1C f = normalize_monic_centered(f_in).first;

  GreenParams gp;
  gp.max_iter = 240;
  auto G = [&](cdouble z) { return green(f, z, gp).value; };

  SamplerParams sp;
  sp.depth = p.sample_depth;
  sp.count = std::min(p.pair_count, 4000);
  sp.seed = p.seed ^ 0x5a5a5a5a;
  sp.threads = p.threads;
  EmpiricalMeasure anchors = sample_measure(f, sp);

  std::vector<double> ratios((std::size_t)p.pair_count,
                             std::numeric_limits<double>::quiet_NaN());
  num::parallel_for((std::size_t)p.pair_count, p.threads, [&](std::size_t i) {
    num::RandomStream rs(p.seed, i);
    cdouble x = anchors.points[i % anchors.points.size()];
    double gx = G(x);
    if (gx > 1e-6) return;  // sampler noise pushed the anchor outside
    double h = std::exp(rs.uniform(std::log(p.h_min), std::log(p.h_max)));

    // outward direction from a centered difference of G at scale h
    cdouble grad{G(x + h) - G(x - h), G(x + cdouble{0, 1} * h) - G(x - cdouble{0, 1} * h)};
    cdouble dir;
    if (std::abs(grad) < 1e-14)
      dir = rs.unit_circle();
    else
      dir = grad / std::abs(grad);
    double theta = std::arg(dir) + rs.uniform(-M_PI / 36.0, M_PI / 36.0);
    cdouble u{std::cos(theta), std::sin(theta)};

    cdouble y = x + h * u;
    double gy = G(y);
    if (gy <= 1e-12) {
      y = x - h * u;
      gy = G(y);
      if (gy <= 1e-12) return;
    }

    // bisect [x, y] for the boundary crossing
    double tau = std::max(2.0 * gx, 1e-12);
    cdouble lo = x, hi = y;
    for (int it = 0; it < 40; ++it) {
      cdouble mid = 0.5 * (lo + hi);
      if (G(mid) > tau)
        hi = mid;
      else
        lo = mid;
    }
    double chordal = 2.0 * std::abs(y - hi) /
                     std::sqrt((1.0 + std::norm(y)) * (1.0 + std::norm(hi)));
    double dist = std::max(chordal, 1e-13 * h);
    double dg = gy - gx;
    if (dg <= 0.0 || dist >= 0.5) return;
    double ratio = std::log(dg) / std::log(dist);
    if (ratio > 0.0 && ratio < 3.0) ratios[i] = ratio;
  });

  std::vector<double> used;
  for (double r : ratios)
    if (std::isfinite(r)) used.push_back(r);
  if (used.size() < 50)
    throw NumericalError("holder_estimate: too few straddling pairs");
  std::sort(used.begin(), used.end());
  HolderEstimate out;
  out.pairs_used = (int)used.size();
  out.alpha = used[used.size() / 20];
  return out;
}

}  // namespace degdyn::onedim
