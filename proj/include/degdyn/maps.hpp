#pragma once

#include <array>
#include <string>
#include <vector>

#include "degdyn/multipoly.hpp"

namespace degdyn::mapalg {

// num/den with den != 0, reduced and den monic-normalized.
struct RatFunc {
  MultiPoly num, den;

  RatFunc() = default;
  RatFunc(MultiPoly n, MultiPoly d);
  static RatFunc from_poly(MultiPoly p);

  bool is_polynomial() const { return den.is_constant(); }
  int nvars() const { return num.nvars(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const;
  RatFunc pow(unsigned e) const;
  bool is_zero() const { return num.is_zero(); }
};

// Rational self-map of C^k in affine coordinates.
struct AffineMap {
  int k = 0;
  std::vector<RatFunc> comps;  // each in k variables

  bool is_polynomial() const;
};

// Self-map of P^k: k+1 homogeneous components of common degree, gcd-reduced.
struct ProjMap {
  int dim = 0;                  // k
  std::vector<MultiPoly> comps; // k+1 polys in k+1 vars
  int degree = 0;

  // Reduces by the component gcd and validates the invariants.
  static ProjMap make(int dim, std::vector<MultiPoly> comps);
};

// Self-map of P^1 x P^1 in coordinates ((z0:z1),(w0:w1)); all polynomials
// live in 4 variables z0,z1,w0,w1. Each pair is bihomogeneous and coprime.
struct BiProjMap {
  std::array<MultiPoly, 2> f;  // first factor: (num, den)-style pair
  std::array<MultiPoly, 2> g;  // second factor
  // Bidegree matrix [[a,b],[c,d]]: first pair has bidegree (a,b) in (z,w).
  std::array<std::array<long, 2>, 2> bidegree() const;

  static BiProjMap make(std::array<MultiPoly, 2> f, std::array<MultiPoly, 2> g);
};

ProjMap homogenize_proj(const AffineMap& f);
BiProjMap homogenize_biproj(const AffineMap& f);  // k = 2 only

ProjMap compose(const ProjMap& f, const ProjMap& g);
BiProjMap compose(const BiProjMap& f, const BiProjMap& g);
ProjMap proj_identity(int dim);
BiProjMap biproj_identity();

// Determinant of the Jacobian matrix; zero iff the map is non-dominant.
RatFunc jacobian_det(const AffineMap& f);

// Dominance probe: exact Jacobian determinant evaluated at a few fixed
// generic rational points (cheap; avoids the symbolic determinant).
bool is_dominant(const AffineMap& f);
bool is_dominant(const ProjMap& f);
bool is_dominant(const BiProjMap& f);

std::string to_string(const ProjMap& m);
std::string to_string(const BiProjMap& m);
std::string to_string(const AffineMap& m);

// Variable-name conventions shared with the parser/printer.
std::vector<std::string> affine_var_names(int k);
std::vector<std::string> proj_var_names(int k);

}  // namespace degdyn::mapalg
