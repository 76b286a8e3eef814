#include <algorithm>
#include <cmath>

#include "degdyn/onedim.hpp"

namespace degdyn::onedim {

BallMassReport ball_mass_check(const EmpiricalMeasure& m,
                               const std::vector<double>& radii, double alpha,
                               int max_centers) {
  if (m.points.empty()) throw InputError("ball_mass_check: empty measure");
  BallMassReport rep;
  rep.alpha = alpha;

  std::size_t N = m.points.size();
  std::size_t stride = std::max<std::size_t>(1, N / (std::size_t)max_centers);

  double lo = 1e300, hi = 0.0;
  for (double r : radii) {
    BallMassRow row;
    row.radius = r;
    long best = 0;
    for (std::size_t c = 0; c < N; c += stride) {
      long count = 0;
      for (std::size_t i = 0; i < N; ++i)
        if (std::abs(m.points[i] - m.points[c]) <= r) ++count;
      best = std::max(best, count);
    }
    // below ~10 samples per ball the estimate is resolution noise
    row.included = best >= 10;
    row.max_ratio = ((double)best / (double)N) / std::pow(r, alpha);
    rep.rows.push_back(row);
    if (row.included) {
      lo = std::min(lo, row.max_ratio);
      hi = std::max(hi, row.max_ratio);
    }
  }
  rep.ratio_blowup = hi > 10.0 * lo;
  return rep;
}

}  // namespace degdyn::onedim
