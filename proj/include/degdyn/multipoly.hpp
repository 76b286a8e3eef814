#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "degdyn/gaussian_rational.hpp"

namespace degdyn::mapalg {

using ExpVec = std::vector<std::uint32_t>;

// Hard ceiling on per-variable exponents. Compositions that would exceed it
// are rejected up front instead of silently wrapping.
inline constexpr std::uint32_t kExponentGuard = 1u << 16;

// Graded lexicographic: higher total degree first, ties broken lexicographically.
struct GradedLexGreater {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

// Exact multivariate polynomial over Q(i). Terms are kept in canonical graded
// lex order; zero coefficients are never stored. Immutable in spirit: all
// operations return fresh values.
class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, GaussRat, GradedLexGreater>;

  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, GaussRat c);
  static MultiPoly variable(int nvars, int index);
  static MultiPoly monomial(int nvars, ExpVec e, GaussRat c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Zero polynomial reports total degree -1.
  int total_degree() const;
  int degree_in(int var) const;
  bool is_homogeneous() const;
  bool depends_on(int var) const;

  const GaussRat& leading_coeff() const;  // w.r.t. graded lex
  GaussRat constant_term() const;

  void add_term(const ExpVec& e, const GaussRat& c);

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const GaussRat& c) const;
  MultiPoly pow(unsigned e) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly derivative(int var) const;

  // Substitute args[i] for variable i; args live in a ring with any nvars.
  MultiPoly substitute(std::span<const MultiPoly> args) const;

  GaussRat eval(std::span<const GaussRat> point) const;
  std::complex<double> eval(std::span<const std::complex<double>> point) const;

  // Appends one extra variable (the new last index) and pads every term to
  // total degree `target`; exponent guard applies.
  MultiPoly homogenized(int target) const;
  // Drops variable `var` by setting it to 1.
  MultiPoly dehomogenized(int var) const;
  // Restriction var := 0.
  MultiPoly restricted_zero(int var) const;

  // Leading-coefficient-one normalization (graded lex); zero stays zero.
  MultiPoly monic() const;

  std::string str(std::span<const std::string> var_names) const;
  std::string str() const;  // default names x0..x{n-1}

 private:
  int nvars_;
  TermMap terms_;
};

// Exact division; nullopt if d does not divide p.
std::optional<MultiPoly> try_divide(const MultiPoly& p, const MultiPoly& d);

// GCD over Q(i)[x0..x{n-1}] by content extraction + subresultant PRS on a
// main variable. Normalized monic (graded lex) except gcd(p,0)=p verbatim.
MultiPoly poly_gcd(const MultiPoly& p, const MultiPoly& q);

MultiPoly poly_lcm(const MultiPoly& p, const MultiPoly& q);

// Scalar c such that p/c has Gaussian-integer coefficients with unit content;
// keeps PRS coefficient sizes under control. Zero polynomial yields 1.
GaussRat rational_content(const MultiPoly& p);

// Divides every component by the full common factor: the common monomial
// part is peeled off first, a random-line restriction certifies coprimality
// of the rest, and only an uncertified restriction falls back to the
// multivariate gcd.
void reduce_common_factor(std::vector<MultiPoly>& comps);

}  // namespace degdyn::mapalg
