#include <algorithm>
#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/roots.hpp"

namespace degdyn::onedim {

EquidistReport preimage_equidistribution(const Poly1C& f, cdouble a,
                                         const std::vector<int>& depths,
                                         const EmpiricalMeasure& reference) {
  int d = f.degree();
  if (d < 2) throw InputError("preimage_equidistribution: degree must be >= 2");
  if (depths.empty()) throw InputError("preimage_equidistribution: no depths");
  int n_max = *std::max_element(depths.begin(), depths.end());
  if (std::pow((double)d, (double)n_max) > 16384.0)
    throw InputError("preimage_equidistribution: d^n exceeds the 2^14 guard");

  ExceptionalSet ex = exceptional_points(RatMap1C::from_poly(f));
  for (const auto& e : ex.points)
    if (!e.at_infinity && std::abs(e.z - a) < 1e-9)
      throw InputError("preimage_equidistribution: start point is exceptional");

  num::ProbeSet probes = num::make_probes(reference, 0xe9);

  EquidistReport rep;
  std::vector<int> want = depths;
  std::sort(want.begin(), want.end());

  std::vector<cdouble> level = {a};
  int depth = 0;
  for (int target : want) {
    while (depth < target) {
      std::vector<cdouble> next;
      next.reserve(level.size() * (std::size_t)d);
      for (cdouble w : level) {
        Poly1C num_ = f;
        num_.c[0] -= w;
        num::RootSet rs = num::roots(num_);
        auto all = rs.expanded();
        if ((int)all.size() != d)
          throw NumericalError("preimage_equidistribution: lost preimages");
        next.insert(next.end(), all.begin(), all.end());
      }
      level = std::move(next);
      ++depth;
    }
    EmpiricalMeasure nu;
    nu.points = level;
    rep.depths.push_back(target);
    rep.distances.push_back(num::measure_distance(nu, reference, probes));
  }
  for (std::size_t i = 1; i < rep.distances.size(); ++i)
    if (rep.distances[i] > 1.2 * rep.distances[i - 1])
      rep.decreasing_within_slack = false;
  return rep;
}

}  // namespace degdyn::onedim
