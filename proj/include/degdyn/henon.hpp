#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "degdyn/maps.hpp"
#include "degdyn/onedim.hpp"
#include "degdyn/poly1.hpp"

namespace degdyn::henon {

using num::cdouble;
using num::Poly1C;
using C2 = std::array<cdouble, 2>;

// One generator (z, w) -> (p(z) - a w, z); compositions of several factors
// cover the full family of positive-entropy polynomial automorphisms of C^2.
struct HenonFactor {
  Poly1C p;
  cdouble a{1.0, 0.0};
};

struct HenonMap {
  std::vector<HenonFactor> factors;  // applied first-to-last

  static HenonMap single(Poly1C p, cdouble a);

  long degree() const;       // product of the factor degrees
  cdouble jacobian() const;  // constant: product of the a_i

  C2 apply(const C2& x) const;
  C2 apply_inverse(const C2& x) const;

  // exact affine models (coefficients are dyadic rationals of the doubles)
  mapalg::AffineMap forward_affine() const;
  mapalg::AffineMap inverse_affine() const;
};

using onedim::GreenParams;
using onedim::GreenValue;

// G^+ = lim d^-n log^+ ||h^n(x)||, certified geometric tail; G^- runs the
// same escape rate on the explicit inverse.
GreenValue green_plus(const HenonMap& h, const C2& x, const GreenParams& p = {});
GreenValue green_minus(const HenonMap& h, const C2& x, const GreenParams& p = {});

double henon_escape_radius(const HenonMap& h);

struct PointClass {
  GreenValue gplus, gminus;
  bool in_K_plus = false, in_K_minus = false, in_K = false;
};
PointClass classify_point(const HenonMap& h, const C2& x, const GreenParams& p = {});

struct HenonFixedPoint {
  C2 point{};
  std::array<cdouble, 2> eigenvalues{};
  cdouble determinant{};  // equals the constant Jacobian
  enum class Type { Saddle, Attracting, Repelling, Indifferent } type = Type::Saddle;
  int period = 1;
};
// Period 1 in closed form (roots of p(z) - (a+1) z = 0 on the diagonal).
std::vector<HenonFixedPoint> fixed_points(const HenonMap& h);
// Higher periods by Newton from a 20x20 seed grid; non-exhaustive, each
// returned orbit is verified to residual 1e-9. seeds_failed (if given)
// counts the grid seeds whose Newton iteration did not converge.
std::vector<HenonFixedPoint> periodic_points_newton(const HenonMap& h, int n,
                                                    int* seeds_failed = nullptr);

// ---------------------------------------------------------------------------
// Indeterminacy on the hyperplane at infinity (exact arithmetic)

struct InfinityComponent {
  // zero set of {x_i : i in vanishing} intersected with the hyperplane at
  // infinity, or of a general form when `form` is set
  std::vector<int> vanishing;            // coordinate indices forced to 0
  std::optional<mapalg::MultiPoly> form; // non-monomial component equation
  int dim = 0;                           // projective dimension
};

struct IndeterminacySet {
  // isolated points in homogeneous coordinates on P^k (exact)
  std::vector<std::vector<mapalg::GaussRat>> points;
  std::vector<InfinityComponent> components;  // positive-dimensional parts
  int dim() const;
};

// F must be the homogenization of a polynomial map, so that I_F sits inside
// the hyperplane at infinity (the last coordinate).
IndeterminacySet indeterminacy_points(const mapalg::ProjMap& F);

struct RegularityReport {
  bool regular = false;
  int l = 0;  // dim I_{f^-1} + 1
  IndeterminacySet i_f, i_finv;
  long lambda1 = 0;                    // deg f
  std::vector<double> lambda_check;    // lambda_j = lambda1^j for j <= l (reported)
  std::string note;
};
RegularityReport regularity_check(const mapalg::AffineMap& f,
                                  const mapalg::AffineMap& f_inverse);
RegularityReport regularity_check(const HenonMap& h);
// product of two Henon maps acting on C^4
RegularityReport product_regularity(const HenonMap& h1, const HenonMap& h2);

}  // namespace degdyn::henon
