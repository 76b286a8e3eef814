#include <cmath>

#include "degdyn/onedim.hpp"

namespace degdyn::onedim {

namespace {

// In-place Ruffini-Horner shift: coefficients of p(z + x0).
std::vector<cdouble> taylor_shift(std::vector<cdouble> a, cdouble x0) {
  int d = (int)a.size() - 1;
  for (int k = 0; k < d; ++k)
    for (int i = d - 1; i >= k; --i)
      a[(std::size_t)i] += x0 * a[(std::size_t)i + 1];
  return a;
}

}  // namespace

// Conjugate by A(z) = a z + b so that A o f o A^{-1} is monic with zero
// z^{d-1} coefficient: center with b0 = a_{d-1}/(d c), then scale by the
// principal (d-1)-th root of the leading coefficient.
std::pair<Poly1C, Conjugacy> normalize_monic_centered(const Poly1C& f) {
  int d = f.degree();
  if (d < 2) throw InputError("normalize_monic_centered: degree must be >= 2");
  cdouble c = f.c.back();
  cdouble beta = f.c[(std::size_t)d - 1] / ((double)d * c);

  // g1 = T o f o T^{-1} with T(z) = z + beta
  std::vector<cdouble> g1 = taylor_shift(f.c, -beta);
  g1[0] += beta;

  cdouble alpha = std::pow(g1.back(), 1.0 / (double)(d - 1));
  std::vector<cdouble> g((std::size_t)d + 1);
  for (int i = 0; i <= d; ++i)
    g[(std::size_t)i] = g1[(std::size_t)i] * std::pow(alpha, 1.0 - (double)i);
  Poly1C out(std::move(g));
  // kill roundoff in the two normalized coefficients
  out.c.back() = 1.0;
  if (std::abs(out.c[(std::size_t)d - 1]) < 1e-12) out.c[(std::size_t)d - 1] = 0.0;

  Conjugacy A;
  A.a = alpha;
  A.b = alpha * beta;
  return {out, A};
}

}  // namespace degdyn::onedim
