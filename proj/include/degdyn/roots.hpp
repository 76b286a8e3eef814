#pragma once

#include <functional>
#include <vector>

#include "degdyn/poly1.hpp"

namespace degdyn::num {

struct RootSet {
  std::vector<cdouble> roots;     // distinct, clustered
  std::vector<int> multiplicity;  // sums to the polynomial degree
  double max_residual = 0.0;
  bool converged = true;

  // All roots repeated with multiplicity.
  std::vector<cdouble> expanded() const;
};

// All complex roots by Aberth-Ehrlich simultaneous iteration with Newton
// polish; initial points on a Cauchy-bound circle with equal angles plus a
// deterministic phase. Clustering radius 1e-6 * cauchy_bound.
RootSet roots(const Poly1C& p);

// Simultaneous iteration driven by a caller-supplied Newton ratio p/p'(z);
// used where expanding coefficients is numerically hopeless (high iterates).
// Returns exactly `degree` points; convergence flag mirrors RootSet.
std::vector<cdouble> aberth_functional(int degree, double radius,
                                       const std::function<cdouble(cdouble)>& newton_ratio,
                                       bool* converged = nullptr,
                                       int max_sweeps = 400);

// Greedy clustering at the given radius; returns centroids + multiplicities.
void cluster_points(const std::vector<cdouble>& pts, double radius,
                    std::vector<cdouble>& centers, std::vector<int>& mult);

}  // namespace degdyn::num
