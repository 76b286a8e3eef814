#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degdyn/errors.hpp"
#include "degdyn/maps.hpp"

namespace degdyn::degrees {

using Mat2 = std::array<std::array<long long, 2>, 2>;

// Spectral radius of a nonnegative 2x2 integer matrix.
double spectral_radius(const Mat2& m);

struct DegreeReport {
  std::string model;                 // "P2", "P3", ..., "P1xP1"
  std::vector<long long> d;          // P^k degree sequence d_1..d_N
  std::vector<Mat2> B;               // P^1xP^1 bidegree matrices B_1..B_N
  double lambda1 = 0.0;
  double lambda1_err = 0.0;
  bool stable = false;
  int exact_n = 0;                   // entries up to here come from exact composition
  bool extended = false;             // tail generated by d_1^n / verified recurrence
  std::vector<long long> recurrence; // integer recurrence used for the tail, if any
  bool guard_hit = false;            // stopped before the requested N
  int requested_n = 0;

  std::vector<double> lambdas;       // known dynamical degrees, lambdas[0] = 1
  double entropy_bound = 0.0;        // log max lambda_l over the known list
  std::optional<int> dominant_l;
  bool concavity_ok = true;
};

// Caps on the exact composition phase; once exceeded the sequence continues
// by d_1^n (if the exact prefix is stable) or by a verified integer linear
// recurrence fitted to the prefix.
struct SequenceBudget {
  int max_degree = 256;        // degree of the current iterate
  std::size_t max_terms = 1500;  // per-component term count before composing again
};

DegreeReport degree_sequence(const mapalg::ProjMap& f, int N,
                             const SequenceBudget& budget = {});
DegreeReport degree_sequence(const mapalg::BiProjMap& f, int N,
                             const SequenceBudget& budget = {});

// lambda_l = max over l-element subsets of the product (triangular maps).
std::vector<double> skew_degrees(const std::vector<long>& d);

struct Verdict {
  std::optional<int> dominant_l;
  double entropy_bound = 0.0;
  bool concavity_ok = true;
};
// Input includes lambda_0 = 1 in front.
Verdict hyperbolicity_verdict(const std::vector<double>& lambdas);

// Number of affine preimages of a generic target, by Sylvester-resultant
// elimination with evaluation-interpolation determinants; majority vote
// over `trials` random targets.
long topological_degree(const mapalg::AffineMap& f, int trials, std::uint64_t seed);

struct FixedPointCount {
  int period = 0;
  long affine_count = 0;  // with clustering multiplicity
  std::optional<long long> lefschetz_total;
};
FixedPointCount fixed_point_count(const mapalg::AffineMap& f, int n,
                                  std::uint64_t seed,
                                  bool extends_holomorphically = false);

struct MonomialReport {
  int k = 0;
  double lambda1 = 0.0;     // spectral radius of A
  double lambda_k = 0.0;    // |det A|
  std::vector<Mat2> bidegrees;  // k = 2: exact iterated bidegree matrices
  std::vector<Mat2> predicted;  // entrywise |A^n|
  bool sequence_matches = true;
  // Conjectural lambda_j for k >= 3 (products of |eigenvalue| in decreasing
  // order); prediction only, never a verified output.
  std::vector<double> conjectural_lambdas;
};
// A is k x k integer, det != 0. For k = 2, iterates the induced map on
// P^1 x P^1 exactly for `N` steps.
MonomialReport monomial_degrees(const std::vector<std::vector<long>>& A, int N = 0);

struct QuadraticClass {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::string matched_class;  // "", "(golden,1)", "(2,1)", "(sqrt2,2)", "(golden,2)", "(2,3)", "(2,4)"
  std::string warning;
  DegreeReport on_p2, on_biproj;
};
QuadraticClass classify_quadratic(const mapalg::AffineMap& f, std::uint64_t seed);

}  // namespace degdyn::degrees
