#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degdyn/empirical_measure.hpp"
#include "degdyn/errors.hpp"
#include "degdyn/grid_io.hpp"
#include "degdyn/measure_distance.hpp"
#include "degdyn/poly1.hpp"

namespace degdyn::onedim {

using num::cdouble;
using num::EmpiricalMeasure;
using num::Poly1C;
using num::RatMap1C;

// ---------------------------------------------------------------------------
// Green function (escape rate)

struct GreenParams {
  double escape_radius = 0.0;  // 0 = auto from coefficients
  int max_iter = 2000;
  int threads = 1;
};

struct GreenValue {
  double value = 0.0;
  double error = 0.0;  // certified bound (geometric tail / bounded-orbit cap)
  int iters = 0;
  bool bounded = false;
};

// G(z) = lim d^-n log^+ |f^n(z)| with a certified geometric tail; exactly 0
// when the orbit stays bounded through max_iter (error bound reported).
GreenValue green(const Poly1C& f, cdouble z, const GreenParams& params = {});

double auto_escape_radius(const Poly1C& f);

struct CapacityCheck {
  double offset = 0.0;     // log|lead| / (d - 1)
  double max_deviation = 0.0;
};
// max over probe angles and radii of |G(z) - log|z| - offset|.
CapacityCheck capacity_check(const Poly1C& f, const std::vector<double>& radii,
                             int probes_per_radius = 16);

// ---------------------------------------------------------------------------
// Normal form

struct Conjugacy {
  cdouble a{1.0, 0.0}, b{0.0, 0.0};  // A(z) = a z + b, g = A o f o A^{-1}
};
std::pair<Poly1C, Conjugacy> normalize_monic_centered(const Poly1C& f);

// ---------------------------------------------------------------------------
// Exceptional points

struct P1Point {
  cdouble z{0.0, 0.0};
  bool at_infinity = false;
};

struct ExceptionalSet {
  std::vector<P1Point> points;  // 0, 1 or 2
  enum class Tag { None, Polynomial, PowerMap } tag = Tag::None;
};
ExceptionalSet exceptional_points(const RatMap1C& f);
int local_degree(const RatMap1C& f, const P1Point& x);

// ---------------------------------------------------------------------------
// Measure sampler (backward iteration)

struct SamplerParams {
  int depth = 40;
  int count = 10000;
  cdouble start{2.1, 0.7};
  std::uint64_t seed = 1;
  int threads = 1;
};
EmpiricalMeasure sample_measure(const RatMap1C& f, const SamplerParams& p);
EmpiricalMeasure sample_measure(const Poly1C& f, const SamplerParams& p);

// ---------------------------------------------------------------------------
// Lyapunov exponents

struct BirkhoffReport {
  double chi = 0.0;
  double stderr_ = 0.0;
  int used = 0;
  int excluded = 0;  // samples within 1e-12 of a critical point
  bool warning = false;  // > 1% excluded
};
BirkhoffReport lyapunov_birkhoff(const RatMap1C& f, const EmpiricalMeasure& m);

// log d + sum over critical points (with multiplicity) of G(c); monic input.
double lyapunov_critical(const Poly1C& f_monic);

struct LyapunovReport {
  BirkhoffReport birkhoff;
  double chi_critical = 0.0;
  double dimension = 0.0;  // log d / chi_critical
};
LyapunovReport lyapunov_report(const Poly1C& f, const SamplerParams& p);

// max over grid orbits of the Birkhoff average of the spherical derivative,
// n doubled until the estimate moves less than `settle`.
double chi_top_estimate(const RatMap1C& f, const num::GridSpec& grid,
                        int n_max = 256, double settle = 1e-2);

double dimension_estimate(const Poly1C& f);

// ---------------------------------------------------------------------------
// Hölder exponent of G near the filled Julia set boundary

struct HolderParams {
  int pair_count = 4000;
  std::uint64_t seed = 2;
  double h_min = 1e-2, h_max = 5e-2;
  int sample_depth = 32;
  int threads = 1;
};
struct HolderEstimate {
  double alpha = 0.0;          // 5th percentile of the pair exponents
  int pairs_used = 0;
};
HolderEstimate holder_estimate(const Poly1C& f_monic, const HolderParams& p);

// ---------------------------------------------------------------------------
// Periodic points

struct PeriodicOrbit {
  int period = 0;              // minimal period
  cdouble representative{0.0, 0.0};
  cdouble multiplier{0.0, 0.0};  // (f^period)' at the representative
  enum class Type { Repelling, Attracting, Indifferent } type = Type::Repelling;
};

struct PeriodicReport {
  int n = 0;
  long root_count = 0;         // affine roots of f^n(z) - z with multiplicity
  std::vector<PeriodicOrbit> orbits;
  double repelling_fraction = 0.0;  // over the root list
  double max_residual = 0.0;
  std::optional<double> distance_to_reference;  // repelling cloud vs reference
};
PeriodicReport periodic_points(const Poly1C& f, int n, std::uint64_t seed,
                               const EmpiricalMeasure* reference = nullptr);

// ---------------------------------------------------------------------------
// Preimage equidistribution

struct EquidistReport {
  std::vector<int> depths;
  std::vector<double> distances;
  bool decreasing_within_slack = true;  // non-increasing up to 20% slack
};
EquidistReport preimage_equidistribution(const Poly1C& f, cdouble a,
                                         const std::vector<int>& depths,
                                         const EmpiricalMeasure& reference);

// ---------------------------------------------------------------------------
// Mixing experiment

struct MixingReport {
  std::vector<double> correlations;  // index = lag n
  double noise_floor = 0.0;          // 3 / sqrt(N)
  std::optional<double> fitted_exponent;  // least squares on the pre-floor range
  int fit_points = 0;
};
// Observables from a fixed dictionary: "re", "im", "abs", "abs2",
// "gauss:cx,cy,sigma", "cos:kx,ky", "sin:kx,ky".
MixingReport mixing_experiment(const Poly1C& f, const std::string& phi_spec,
                               const std::string& psi_spec, int n_max,
                               const SamplerParams& sampler);

// ---------------------------------------------------------------------------
// Parameter sweep for z^2 + t

struct SweepGrid {
  num::GridSpec grid;
  std::vector<double> chi;         // row-major, chi(t) = log 2 + G_t(0)
  double submean_fraction = 1.0;   // interior nodes satisfying the 8-neighbor
                                   // discrete submean up to 1e-3
};
SweepGrid parameter_sweep(const num::GridSpec& grid, int green_iters = 2000,
                          int threads = 1);

// ---------------------------------------------------------------------------
// Ball mass growth

struct BallMassRow {
  double radius = 0.0;
  double max_ratio = 0.0;  // max over centers of mass(B(c,r)) / r^alpha
  bool included = true;    // false below sample resolution
};
struct BallMassReport {
  std::vector<BallMassRow> rows;
  double alpha = 0.0;
  bool ratio_blowup = false;  // included ratios spread by more than 10x
};
BallMassReport ball_mass_check(const EmpiricalMeasure& m,
                               const std::vector<double>& radii, double alpha,
                               int max_centers = 200);

}  // namespace degdyn::onedim
