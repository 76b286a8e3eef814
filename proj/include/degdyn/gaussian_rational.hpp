#pragma once

#include <complex>
#include <string>
#include <gmpxx.h>

namespace degdyn::mapalg {

// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
struct GaussRat {
  mpq_class re{0};
  mpq_class im{0};

  GaussRat() = default;
  GaussRat(long r) : re(r) {}
  GaussRat(mpq_class r) : re(std::move(r)) {}
  GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_one() const { return re == 1 && im == 0; }

  GaussRat conj() const { return {re, -im}; }
  mpq_class norm() const { return re * re + im * im; }  // |.|^2, exact

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    // real-only fast paths dominate in practice
    if (a.im == 0) {
      if (b.im == 0) return GaussRat(a.re * b.re);
      return {a.re * b.re, a.re * b.im};
    }
    if (b.im == 0) return {a.re * b.re, a.im * b.re};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b);

  GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
  GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
  GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
  GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

GaussRat inverse(const GaussRat& a);

// Canonical text form, e.g. "3/2", "-i", "1/2 - 5*i". Parse counterpart lives
// in the map grammar.
std::string to_string(const GaussRat& a);

}  // namespace degdyn::mapalg
