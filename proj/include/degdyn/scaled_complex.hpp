#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace degdyn::num {

// Complex value m * 2^e with |m| kept near 1; survives the doubly-exponential
// growth of escaping orbits where raw doubles overflow within a few steps.
struct ScaledComplex {
  std::complex<double> m{0.0, 0.0};
  long e = 0;

  ScaledComplex() = default;
  ScaledComplex(std::complex<double> v) : m(v) { normalize(); }
  ScaledComplex(std::complex<double> mm, long ee) : m(mm), e(ee) { normalize(); }

  void normalize() {
    double a = std::abs(m);
    if (a == 0.0) {
      e = 0;
      return;
    }
    int k;
    (void)std::frexp(a, &k);
    if (k > 40 || k < -40) {
      m = std::ldexp(1.0, -k) * m;
      e += k;
    }
  }

  bool is_zero() const { return m == std::complex<double>(0.0, 0.0); }

  double log_abs() const { return std::log(std::abs(m)) + (double)e * M_LN2; }

  // Collapses to double; saturates instead of overflowing.
  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (e > 1000) {
      double s = std::abs(m);
      return m / s * 1e300;
    }
    if (e < -1000) return {0.0, 0.0};
    return std::ldexp(1.0, (int)e) * m;
  }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    return {a.m * b.m, a.e + b.e};
  }
  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long d = a.e - b.e;
    if (d > 120) return a;
    if (d < -120) return b;
    if (d >= 0) return {a.m + std::ldexp(1.0, (int)-d) * b.m, a.e};
    return {std::ldexp(1.0, (int)d) * a.m + b.m, b.e};
  }
  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
    return a + ScaledComplex(-b.m, b.e);
  }
  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
    return {a.m / b.m, a.e - b.e};
  }
};

// Horner evaluation with scaled intermediates; coeffs ascending.
inline ScaledComplex eval_scaled(std::span<const std::complex<double>> coeffs,
                                 const ScaledComplex& z) {
  ScaledComplex acc(coeffs.empty() ? 0.0 : coeffs.back());
  for (std::size_t i = coeffs.size(); i-- > 1;)
    acc = acc * z + ScaledComplex(coeffs[i - 1]);
  return acc;
}

}  // namespace degdyn::num
