#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/scaled_complex.hpp"

namespace degdyn::onedim {

using num::ScaledComplex;

double auto_escape_radius(const Poly1C& f) {
  int d = f.degree();
  double lead = std::abs(f.c.back());
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += std::abs(f.c[(std::size_t)i]);
  // |f(z)| >= 2|z| outside this radius (d >= 2)
  return std::max(1.0, (s + 2.0) / lead);
}

GreenValue green(const Poly1C& f, cdouble z, const GreenParams& params) {
  int d = f.degree();
  if (d < 2) throw InputError("green: degree must be >= 2");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InputError("green: NaN input");

  double R = params.escape_radius > 0 ? params.escape_radius : auto_escape_radius(f);
  double lead = std::abs(f.c.back());
  double S = 0.0;
  for (int i = 0; i < d; ++i) S += std::abs(f.c[(std::size_t)i]);

  const double log_huge = 69.0;  // |z| ~ 1e30: tail corrections below 1e-29
  ScaledComplex zc(z);
  GreenValue out;
  int n = 0;
  while (n < params.max_iter) {
    double la = zc.is_zero() ? -1e300 : zc.log_abs();
    if (la > log_huge) break;
    zc = num::eval_scaled(f.c, zc);
    ++n;
  }
  out.iters = n;

  double la = zc.is_zero() ? -1e300 : zc.log_abs();
  if (la <= std::log(R)) {
    // never escaped: G = 0 up to the bounded-orbit cap
    out.value = 0.0;
    out.bounded = true;
    double gmax = std::log(R) + std::log(2.0) +
                  std::max(0.0, std::log(lead)) / (double)(d - 1);
    out.error = std::pow((double)d, -(double)n) * gmax;
    return out;
  }

  // escaped: G = d^-n (log|z_n| + log|lead|/(d-1)) + tail
  double dn = std::pow((double)d, -(double)n);
  out.value = dn * (la + std::log(lead) / (double)(d - 1));
  // tail: per-step defect |log|1 + delta_m|| with |delta_m| <= S/(lead |z_m|)
  // decreasing along the orbit; |z_n| > R keeps delta < 1, and -log1p(-delta)
  // bounds both signs. Summed geometrically from step n on.
  double delta = std::min(S / (lead * std::exp(std::min(la, 700.0))), 1.0 - 1e-9);
  double step_err = -std::log1p(-delta);
  out.error = dn * (step_err * (double)d / (double)(d - 1) + 1e-14 * (1.0 + la));
  if (out.value < 0.0) out.value = 0.0;
  return out;
}

CapacityCheck capacity_check(const Poly1C& f, const std::vector<double>& radii,
                             int probes_per_radius) {
  int d = f.degree();
  if (d < 2) throw InputError("capacity_check: degree must be >= 2");
  CapacityCheck out;
  out.offset = std::log(std::abs(f.c.back())) / (double)(d - 1);
  GreenParams gp;
  for (double r : radii)
    for (int k = 0; k < probes_per_radius; ++k) {
      double a = 2.0 * M_PI * (k + 0.37) / probes_per_radius;
      cdouble z = r * cdouble{std::cos(a), std::sin(a)};
      GreenValue g = green(f, z, gp);
      out.max_deviation =
          std::max(out.max_deviation, std::abs(g.value - std::log(r) - out.offset));
    }
  return out;
}

}  // namespace degdyn::onedim
