#include "degdyn/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <gmpxx.h>

namespace degdyn::degrees {

double spectral_radius(const Mat2& m) {
  double tr = (double)m[0][0] + (double)m[1][1];
  double det = (double)m[0][0] * (double)m[1][1] - (double)m[0][1] * (double)m[1][0];
  double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    double r1 = std::abs((tr + std::sqrt(disc)) / 2.0);
    double r2 = std::abs((tr - std::sqrt(disc)) / 2.0);
    return std::max(r1, r2);
  }
  return std::sqrt(std::abs(det));
}

namespace {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      long long acc = 0;
      for (int l = 0; l < 2; ++l) {
        long long t;
        if (__builtin_mul_overflow(a[i][l], b[l][j], &t) ||
            __builtin_add_overflow(acc, t, &acc))
          throw InputError("bidegree matrix power overflows 64 bits");
      }
      c[i][j] = acc;
    }
  return c;
}

// Fits an integer linear recurrence d_n = sum a_i d_{n-i} of order <= 4 to
// the exact prefix and validates it on every available term. The tail of an
// unstable degree sequence is generated by the pullback action on a stable
// model, so a short recurrence is the expected shape.
std::vector<long long> detect_recurrence(const std::vector<long long>& d) {
  int m = (int)d.size();
  for (int r = 1; r <= 4; ++r) {
    if (m < 2 * r + 3) break;
    // Solve the r x r system from the last 2r terms, exactly.
    std::vector<std::vector<mpq_class>> M((std::size_t)r,
                                          std::vector<mpq_class>((std::size_t)r + 1));
    for (int row = 0; row < r; ++row) {
      int n = m - r + row;  // d[n] = sum a_i d[n-i]
      for (int i = 1; i <= r; ++i)
        M[(std::size_t)row][(std::size_t)i - 1] = (long)d[(std::size_t)(n - i)];
      M[(std::size_t)row][(std::size_t)r] = (long)d[(std::size_t)n];
    }
    // Gaussian elimination over Q.
    bool singular = false;
    for (int col = 0; col < r && !singular; ++col) {
      int piv = -1;
      for (int row = col; row < r; ++row)
        if (M[(std::size_t)row][(std::size_t)col] != 0) {
          piv = row;
          break;
        }
      if (piv < 0) {
        singular = true;
        break;
      }
      std::swap(M[(std::size_t)col], M[(std::size_t)piv]);
      for (int row = 0; row < r; ++row) {
        if (row == col || M[(std::size_t)row][(std::size_t)col] == 0) continue;
        mpq_class f = M[(std::size_t)row][(std::size_t)col] / M[(std::size_t)col][(std::size_t)col];
        for (int c2 = col; c2 <= r; ++c2)
          M[(std::size_t)row][(std::size_t)c2] -= f * M[(std::size_t)col][(std::size_t)c2];
      }
    }
    if (singular) continue;
    std::vector<mpq_class> a((std::size_t)r);
    bool integral = true;
    for (int i = 0; i < r; ++i) {
      a[(std::size_t)i] = M[(std::size_t)i][(std::size_t)r] / M[(std::size_t)i][(std::size_t)i];
      if (a[(std::size_t)i].get_den() != 1 ||
          !a[(std::size_t)i].get_num().fits_slong_p())
        integral = false;
    }
    if (!integral) continue;
    // Validate on the whole prefix.
    bool ok = true;
    for (int n = r; n < m && ok; ++n) {
      mpq_class acc = 0;
      for (int i = 1; i <= r; ++i)
        acc += a[(std::size_t)i - 1] * (long)d[(std::size_t)(n - i)];
      ok = acc == (long)d[(std::size_t)n];
    }
    if (!ok) continue;
    std::vector<long long> coeffs;
    for (const auto& q : a) coeffs.push_back((long long)q.get_num().get_si());
    return coeffs;
  }
  return {};
}

long long recurrence_next(const std::vector<long long>& coeffs,
                          const std::vector<long long>& d) {
  long long acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    long long v = d[d.size() - 1 - i];
    if (std::abs(coeffs[i]) > 64 || std::abs(v) > (1LL << 55))
      throw InputError("degree sequence overflows 64 bits");
    acc += coeffs[i] * v;
  }
  if (acc < 0 || acc > (1LL << 62)) throw InputError("degree sequence overflows 64 bits");
  return acc;
}

void finish_lambda1(DegreeReport& rep, const std::vector<double>& tail_ratios) {
  if (tail_ratios.empty()) {
    rep.lambda1 = rep.model == "P1xP1" ? 0.0 : 1.0;
    rep.lambda1_err = 0.0;
    return;
  }
  // dynamical degrees never drop below 1; the ratio estimator can (e.g. an
  // involution at N=2), so floor it and keep the error bar honest
  rep.lambda1 = std::max(tail_ratios.back(), 1.0);
  rep.lambda1_err = tail_ratios.size() >= 2
                        ? std::abs(tail_ratios.back() - tail_ratios[tail_ratios.size() - 2])
                        : 0.0;
}

void fill_verdict(DegreeReport& rep) {
  if (rep.lambdas.empty()) rep.lambdas = {1.0, rep.lambda1};
  Verdict v = hyperbolicity_verdict(rep.lambdas);
  rep.entropy_bound = v.entropy_bound;
  rep.dominant_l = v.dominant_l;
  rep.concavity_ok = v.concavity_ok;
}

bool within_budget(const mapalg::ProjMap& f, const SequenceBudget& b) {
  std::size_t terms = 0;
  for (const auto& c : f.comps) terms += c.term_count();
  return f.degree <= b.max_degree && terms <= b.max_terms;
}

bool within_budget(const mapalg::BiProjMap& f, const SequenceBudget& b) {
  std::size_t terms = 0;
  long deg = 0;
  for (const auto* pr : {&f.f, &f.g})
    for (const auto& p : *pr) {
      terms += p.term_count();
      deg = std::max(deg, (long)p.total_degree());
    }
  return deg <= b.max_degree && terms <= b.max_terms;
}

}  // namespace

DegreeReport degree_sequence(const mapalg::ProjMap& f, int N,
                             const SequenceBudget& budget) {
  DegreeReport rep;
  rep.model = "P" + std::to_string(f.dim);
  rep.requested_n = N;
  if (N < 1) throw InputError("degree_sequence: N must be >= 1");
  if (!mapalg::is_dominant(f)) throw InputError("degree_sequence: map is not dominant");

  mapalg::ProjMap g = f;
  rep.d.push_back(f.degree);
  rep.exact_n = 1;
  bool exact_phase = true;
  for (int n = 2; n <= N; ++n) {
    if (exact_phase) {
      bool next_ok = within_budget(g, budget) &&
                     (double)f.degree * (double)g.degree <= (double)mapalg::kExponentGuard;
      if (next_ok) {
        try {
          g = compose(f, g);
        } catch (const std::overflow_error&) {
          next_ok = false;
        }
      }
      if (next_ok) {
        rep.d.push_back(g.degree);
        rep.exact_n = n;
        continue;
      }
      exact_phase = false;
    }
    // Exact phase over: extend via stability or a verified recurrence.
    bool prefix_stable = true;
    for (int j = 0; j < rep.exact_n; ++j) {
      long long expect = 1;
      for (int t = 0; t <= j; ++t) expect *= f.degree;
      prefix_stable = prefix_stable && rep.d[(std::size_t)j] == expect;
    }
    std::vector<long long> rec =
        prefix_stable ? std::vector<long long>{} : detect_recurrence(rep.d);
    if (prefix_stable) {
      for (int j = (int)rep.d.size() + 1; j <= N; ++j) {
        if (rep.d.back() > (1LL << 55) / f.degree) {
          rep.guard_hit = true;
          break;
        }
        rep.d.push_back(rep.d.back() * f.degree);
      }
      rep.extended = true;
    } else if (!rec.empty()) {
      rep.recurrence = rec;
      try {
        while ((int)rep.d.size() < N) rep.d.push_back(recurrence_next(rec, rep.d));
      } catch (const InputError&) {
        rep.guard_hit = true;
      }
      rep.extended = true;
    } else {
      rep.guard_hit = true;
    }
    break;
  }

  rep.stable = true;
  {
    long long expect = 1;
    for (std::size_t j = 0; j < rep.d.size(); ++j) {
      expect *= f.degree;
      rep.stable = rep.stable && rep.d[j] == expect;
    }
  }
  std::vector<double> ratios;
  for (std::size_t j = 1; j < rep.d.size(); ++j)
    ratios.push_back((double)rep.d[j] / (double)rep.d[j - 1]);
  finish_lambda1(rep, ratios);
  if (rep.d.size() == 1) {
    rep.lambda1 = rep.stable ? (double)f.degree : (double)f.degree;
    rep.lambda1_err = 0.0;
  }
  fill_verdict(rep);
  return rep;
}

DegreeReport degree_sequence(const mapalg::BiProjMap& f, int N,
                             const SequenceBudget& budget) {
  DegreeReport rep;
  rep.model = "P1xP1";
  rep.requested_n = N;
  if (N < 1) throw InputError("degree_sequence: N must be >= 1");
  if (!mapalg::is_dominant(f)) throw InputError("degree_sequence: map is not dominant");

  auto to_mat = [](const mapalg::BiProjMap& m) {
    auto bd = m.bidegree();
    Mat2 B{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) B[i][j] = bd[(std::size_t)i][(std::size_t)j];
    return B;
  };

  Mat2 B1 = to_mat(f);
  rep.B.push_back(B1);
  rep.exact_n = 1;
  mapalg::BiProjMap g = f;
  bool exact_phase = true;
  for (int n = 2; n <= N; ++n) {
    if (exact_phase) {
      bool next_ok = within_budget(g, budget);
      if (next_ok) {
        try {
          g = compose(f, g);
        } catch (const std::overflow_error&) {
          next_ok = false;
        }
      }
      if (next_ok) {
        rep.B.push_back(to_mat(g));
        rep.exact_n = n;
        continue;
      }
      exact_phase = false;
    }
    // Stability on the exact prefix, then extension by matrix powers.
    bool prefix_stable = true;
    Mat2 P = B1;
    for (int j = 1; j < rep.exact_n; ++j) {
      P = mat_mul(P, B1);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          prefix_stable = prefix_stable && P[a][b] == rep.B[(std::size_t)j][a][b];
    }
    if (prefix_stable) {
      try {
        Mat2 cur = rep.B.back();
        while ((int)rep.B.size() < N) {
          cur = mat_mul(cur, B1);
          rep.B.push_back(cur);
        }
      } catch (const InputError&) {
        rep.guard_hit = true;
      }
      rep.extended = true;
    } else {
      // Entrywise recurrence fitted on one entry, validated on all four.
      std::vector<std::vector<long long>> seqs(4);
      for (const auto& B : rep.B) {
        seqs[0].push_back(B[0][0]);
        seqs[1].push_back(B[0][1]);
        seqs[2].push_back(B[1][0]);
        seqs[3].push_back(B[1][1]);
      }
      std::vector<long long> rec = detect_recurrence(seqs[0]);
      auto validates = [&](const std::vector<long long>& r) {
        if (r.empty()) return false;
        for (const auto& s : seqs)
          for (std::size_t n2 = r.size(); n2 < s.size(); ++n2) {
            long long acc = 0;
            for (std::size_t i = 0; i < r.size(); ++i)
              acc += r[i] * s[n2 - 1 - i];
            if (acc != s[n2]) return false;
          }
        return true;
      };
      if (validates(rec)) {
        rep.recurrence = rec;
        try {
          while ((int)rep.B.size() < N) {
            Mat2 nxt{};
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b) {
                std::size_t which = (std::size_t)(2 * a + b);
                nxt[a][b] = recurrence_next(rec, seqs[which]);
                seqs[which].push_back(nxt[a][b]);
              }
            rep.B.push_back(nxt);
          }
        } catch (const InputError&) {
          rep.guard_hit = true;
        }
        rep.extended = true;
      } else {
        rep.guard_hit = true;
      }
    }
    break;
  }

  rep.stable = true;
  {
    Mat2 P = B1;
    for (std::size_t j = 1; j < rep.B.size(); ++j) {
      P = mat_mul(P, B1);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) rep.stable = rep.stable && P[a][b] == rep.B[j][a][b];
    }
  }
  std::vector<double> ratios;
  for (std::size_t j = 0; j < rep.B.size(); ++j) {
    double rho = spectral_radius(rep.B[j]);
    ratios.push_back(std::pow(rho, 1.0 / (double)(j + 1)));
  }
  finish_lambda1(rep, ratios);
  fill_verdict(rep);
  return rep;
}

std::vector<double> skew_degrees(const std::vector<long>& d) {
  if (d.empty()) throw InputError("skew_degrees: empty degree list");
  std::vector<long> s = d;
  std::sort(s.begin(), s.end(), std::greater<>());
  std::vector<double> lambdas = {1.0};
  double acc = 1.0;
  for (long v : s) {
    acc *= (double)v;
    lambdas.push_back(acc);
  }
  return lambdas;
}

Verdict hyperbolicity_verdict(const std::vector<double>& lambdas) {
  if (lambdas.empty() || std::abs(lambdas[0] - 1.0) > 1e-12)
    throw InputError("hyperbolicity_verdict: list must start with lambda_0 = 1");
  Verdict v;
  double best = -1.0;
  int arg = -1;
  bool strict = false;
  for (std::size_t l = 0; l < lambdas.size(); ++l) {
    if (lambdas[l] > best + 1e-12) {
      best = lambdas[l];
      arg = (int)l;
      strict = true;
    } else if (std::abs(lambdas[l] - best) <= 1e-12) {
      strict = false;
    }
  }
  if (strict) v.dominant_l = arg;
  v.entropy_bound = std::log(best);
  v.concavity_ok = true;
  for (std::size_t l = 0; l < lambdas.size(); ++l)
    v.concavity_ok = v.concavity_ok && lambdas[l] >= 1.0 - 1e-12;
  for (std::size_t l = 1; l + 1 < lambdas.size(); ++l)
    v.concavity_ok = v.concavity_ok &&
                     lambdas[l + 1] * lambdas[l - 1] <= lambdas[l] * lambdas[l] * (1 + 1e-9);
  return v;
}

}  // namespace degdyn::degrees
