#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace degdyn::num {

// Weighted complex point cloud approximating an equilibrium measure.
// Weights default to uniform (empty vector); they always sum to 1.
struct EmpiricalMeasure {
  std::vector<std::complex<double>> points;
  std::vector<double> weights;  // empty == uniform 1/N

  struct Provenance {
    std::uint64_t seed = 0;
    int depth = 0;
    std::complex<double> start{0.0, 0.0};
    int resampled_paths = 0;    // root-finder retries during sampling
    int perturbed_nodes = 0;    // near-critical-value nudges
  } provenance;

  double weight(std::size_t i) const {
    return weights.empty() ? 1.0 / (double)points.size() : weights[i];
  }
};

}  // namespace degdyn::num
