#pragma once

#include "degdyn/empirical_measure.hpp"

namespace degdyn::num {

// Probe set for the log-potential pseudometric: 16 points on a circle of
// radius 2x the cloud's hull radius plus 16 interior hull points. Exterior
// probes alone cannot separate measures with equal exterior potential
// (circle vs point mass); the interior probes break that tie.
struct ProbeSet {
  std::vector<std::complex<double>> probes;
};

ProbeSet make_probes(const EmpiricalMeasure& ref, std::uint64_t seed);

// max over probes of |V_mu - V_nu| with V the empirical log-potential
// sum w_i log|p - x_i|. For a FIXED probe set this is a pseudometric
// (symmetry and triangle inequality hold identically).
double measure_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                        const ProbeSet& probes, int* probe_collisions = nullptr);

// Convenience: probes built from the union cloud with a fixed seed, so the
// two-argument form is symmetric in (mu, nu).
double measure_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

}  // namespace degdyn::num
