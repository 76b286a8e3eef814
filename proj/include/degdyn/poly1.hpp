#pragma once

#include <complex>
#include <string>
#include <vector>

#include "degdyn/multipoly.hpp"

namespace degdyn::num {

using cdouble = std::complex<double>;

// Dense univariate complex polynomial, coefficients ascending.
struct Poly1C {
  std::vector<cdouble> c;

  Poly1C() = default;
  explicit Poly1C(std::vector<cdouble> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly1C from_exact(const mapalg::MultiPoly& p);  // lossy Q(i) -> C
  static Poly1C parse(const std::string& text);

  int degree() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  cdouble lead() const { return c.empty() ? cdouble{} : c.back(); }

  void trim() {
    while (!c.empty() && c.back() == cdouble{}) c.pop_back();
  }

  cdouble operator()(cdouble z) const {
    cdouble acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
  }

  Poly1C derivative() const {
    if (c.size() <= 1) return Poly1C{};
    std::vector<cdouble> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = (double)i * c[i];
    return Poly1C(std::move(d));
  }

  friend Poly1C operator+(const Poly1C& a, const Poly1C& b);
  friend Poly1C operator-(const Poly1C& a, const Poly1C& b);
  friend Poly1C operator*(const Poly1C& a, const Poly1C& b);
  Poly1C scaled(cdouble s) const;

  // 1 + sum |a_i| / |a_d|: every root has modulus below this.
  double cauchy_bound() const;

  std::string str(const std::string& var = "z") const;
};

// Rational map P/Q on P^1 with max(deg P, deg Q) = lambda; gcd(P,Q) certified
// nonzero numerically (normalized resultant).
struct RatMap1C {
  Poly1C P, Q;

  static RatMap1C from_poly(Poly1C p);
  static RatMap1C make(Poly1C p, Poly1C q);  // validates coprimality

  int degree() const { return std::max(P.degree(), Q.degree()); }
  bool is_polynomial() const { return Q.degree() == 0; }
  cdouble operator()(cdouble z) const { return P(z) / Q(z); }
};

// Normalized Sylvester resultant magnitude; ~0 iff common root.
double resultant_gauge(const Poly1C& p, const Poly1C& q);

}  // namespace degdyn::num
