#include <algorithm>
#include <cmath>
#include <gmpxx.h>

#include "degdyn/degrees.hpp"
#include "degdyn/roots.hpp"

namespace degdyn::degrees {

namespace {

using Qmat = std::vector<std::vector<mpq_class>>;

Qmat qmat_mul(const Qmat& a, const Qmat& b) {
  std::size_t k = a.size();
  Qmat c(k, std::vector<mpq_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < k; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier, exact.
std::vector<mpq_class> char_poly(const Qmat& A) {
  std::size_t k = A.size();
  std::vector<mpq_class> c(k + 1, 0);
  c[k] = 1;
  Qmat M(k, std::vector<mpq_class>(k, 0));
  for (std::size_t step = 1; step <= k; ++step) {
    // M <- A(M + c_{k-step+1} I)
    for (std::size_t i = 0; i < k; ++i) M[i][i] += c[k - step + 1];
    M = qmat_mul(A, M);
    mpq_class tr = 0;
    for (std::size_t i = 0; i < k; ++i) tr += M[i][i];
    c[k - step] = -tr / (long)step;
  }
  return c;
}

// Exact monomial pair for z^a w^b in ((z0:z1),(w0:w1)); negative exponents
// flip numerator and denominator roles.
std::array<mapalg::MultiPoly, 2> monomial_pair(long a, long b) {
  auto mono = [](long e_z0, long e_z1, long e_w0, long e_w1) {
    mapalg::ExpVec e = {(std::uint32_t)e_z0, (std::uint32_t)e_z1,
                        (std::uint32_t)e_w0, (std::uint32_t)e_w1};
    return mapalg::MultiPoly::monomial(4, e, mapalg::GaussRat(1));
  };
  long ap = std::max(a, 0L), an = std::max(-a, 0L);
  long bp = std::max(b, 0L), bn = std::max(-b, 0L);
  return {mono(ap, an, bp, bn), mono(an, ap, bn, bp)};
}

}  // namespace

MonomialReport monomial_degrees(const std::vector<std::vector<long>>& A, int N) {
  std::size_t k = A.size();
  for (const auto& row : A)
    if (row.size() != k) throw InputError("monomial matrix must be square");
  MonomialReport rep;
  rep.k = (int)k;

  Qmat Aq(k, std::vector<mpq_class>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) Aq[i][j] = A[i][j];
  std::vector<mpq_class> cp = char_poly(Aq);

  // det A = (-1)^k * cp[0]
  mpq_class det = cp[0];
  if (k % 2) det = -det;
  if (det == 0) throw InputError("monomial matrix must be invertible");
  rep.lambda_k = std::abs(det.get_d());

  std::vector<num::cdouble> coeffs;
  for (const auto& q : cp) coeffs.emplace_back(q.get_d(), 0.0);
  num::RootSet ev = num::roots(num::Poly1C(std::move(coeffs)));
  std::vector<double> moduli;
  for (std::size_t i = 0; i < ev.roots.size(); ++i)
    for (int m = 0; m < ev.multiplicity[i]; ++m)
      moduli.push_back(std::abs(ev.roots[i]));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  rep.lambda1 = moduli.empty() ? 1.0 : moduli[0];

  if (k >= 3) {
    // Conjectural lambda_j = product of the j largest |eigenvalues|;
    // presented as a prediction only.
    double acc = 1.0;
    rep.conjectural_lambdas.push_back(1.0);
    for (double m : moduli) {
      acc *= m;
      rep.conjectural_lambdas.push_back(acc);
    }
  }

  if (k == 2 && N > 0) {
    mapalg::BiProjMap f = mapalg::BiProjMap::make(monomial_pair(A[0][0], A[0][1]),
                                                  monomial_pair(A[1][0], A[1][1]));
    mapalg::BiProjMap g = f;
    std::vector<std::vector<mpz_class>> An = {{A[0][0], A[0][1]}, {A[1][0], A[1][1]}};
    for (int n = 1; n <= N; ++n) {
      if (n > 1) {
        g = compose(f, g);
        std::vector<std::vector<mpz_class>> nxt(2, std::vector<mpz_class>(2, 0));
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) nxt[i][j] += An[i][l] * mpz_class(A[l][j]);
        An = std::move(nxt);
      }
      auto bd = g.bidegree();
      Mat2 Bex{}, Bpr{};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          Bex[i][j] = bd[(std::size_t)i][(std::size_t)j];
          mpz_class a = abs(An[(std::size_t)i][(std::size_t)j]);
          Bpr[i][j] = (long long)a.get_si();
        }
      rep.bidegrees.push_back(Bex);
      rep.predicted.push_back(Bpr);
      rep.sequence_matches = rep.sequence_matches && Bex == Bpr;
    }
  }
  return rep;
}

}  // namespace degdyn::degrees
