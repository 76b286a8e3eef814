#include <algorithm>
#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/roots.hpp"

namespace degdyn::onedim {

BirkhoffReport lyapunov_birkhoff(const RatMap1C& f, const EmpiricalMeasure& m) {
  // derivative of P/Q: (P'Q - PQ')/Q^2
  Poly1C W = f.P.derivative() * f.Q - f.P * f.Q.derivative();
  std::vector<cdouble> crit;
  if (W.degree() >= 1)
    for (const auto& c : num::roots(W).roots) crit.push_back(c);

  BirkhoffReport out;
  double sum = 0.0, sum2 = 0.0;
  for (const auto& x : m.points) {
    bool near_crit = std::any_of(crit.begin(), crit.end(), [&](cdouble c) {
      return std::abs(x - c) < 1e-12;
    });
    if (near_crit) {
      out.excluded++;
      continue;
    }
    cdouble q = f.Q(x);
    double v = std::log(std::abs(W(x))) - 2.0 * std::log(std::abs(q));
    sum += v;
    sum2 += v * v;
    out.used++;
  }
  if (out.used == 0) throw NumericalError("lyapunov_birkhoff: no usable samples");
  out.chi = sum / out.used;
  double var = std::max(0.0, sum2 / out.used - out.chi * out.chi);
  out.stderr_ = std::sqrt(var / out.used);
  out.warning = (std::size_t)out.excluded > m.points.size() / 100;
  return out;
}

double lyapunov_critical(const Poly1C& f) {
  int d = f.degree();
  if (d < 2) throw InputError("lyapunov_critical: degree must be >= 2");
  if (std::abs(f.c.back() - cdouble{1.0, 0.0}) > 1e-9)
    throw InputError("lyapunov_critical: monic input required (normalize first)");
  double chi = std::log((double)d);
  Poly1C df = f.derivative();
  if (df.degree() >= 1) {
    num::RootSet cr = num::roots(df);
    GreenParams gp;
    for (std::size_t i = 0; i < cr.roots.size(); ++i)
      chi += cr.multiplicity[i] * green(f, cr.roots[i], gp).value;
  }
  return chi;
}

double dimension_estimate(const Poly1C& f) {
  Poly1C g = normalize_monic_centered(f).first;
  return std::log((double)f.degree()) / lyapunov_critical(g);
}

LyapunovReport lyapunov_report(const Poly1C& f, const SamplerParams& p) {
  LyapunovReport out;
  EmpiricalMeasure m = sample_measure(f, p);
  out.birkhoff = lyapunov_birkhoff(RatMap1C::from_poly(f), m);
  Poly1C g = normalize_monic_centered(f).first;
  out.chi_critical = lyapunov_critical(g);
  out.dimension = std::log((double)f.degree()) / out.chi_critical;
  return out;
}

double chi_top_estimate(const RatMap1C& f, const num::GridSpec& grid, int n_max,
                        double settle) {
  Poly1C W = f.P.derivative() * f.Q - f.P * f.Q.derivative();
  auto spherical_log = [&](cdouble z) {
    double pn = std::norm(f.P(z)), qn = std::norm(f.Q(z));
    return std::log(std::abs(W(z))) + std::log1p(std::norm(z)) -
           std::log(pn + qn);
  };

  double prev = -1e300, cur = 0.0;
  for (int n = 4; n <= n_max; n *= 2) {
    cur = -1e300;
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        cdouble z = grid.node(i, j);
        double acc = 0.0;
        bool alive = true;
        for (int s = 0; s < n && alive; ++s) {
          acc += spherical_log(z);
          cdouble q = f.Q(z);
          if (std::abs(q) < 1e-280) {
            alive = false;  // hit a pole head-on; skip this start
            break;
          }
          z = f.P(z) / q;
          if (std::abs(z) > 1e50) alive = false;  // escaping: average -> -inf
        }
        if (alive) cur = std::max(cur, acc / (double)n);
      }
    if (std::abs(cur - prev) < settle) return cur;
    prev = cur;
  }
  return cur;
}

}  // namespace degdyn::onedim
