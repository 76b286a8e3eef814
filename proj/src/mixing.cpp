#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "degdyn/onedim.hpp"

namespace degdyn::onedim {

namespace {

std::function<double(cdouble)> observable(const std::string& spec) {
  auto split = [](const std::string& s) {
    std::vector<double> args;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) args.push_back(std::stod(item));
    return args;
  };
  if (spec == "re") return [](cdouble z) { return z.real(); };
  if (spec == "im") return [](cdouble z) { return z.imag(); };
  if (spec == "abs") return [](cdouble z) { return std::abs(z); };
  if (spec == "abs2") return [](cdouble z) { return std::norm(z); };
  if (spec.rfind("gauss:", 0) == 0) {
    auto a = split(spec.substr(6));
    if (a.size() != 3 || a[2] <= 0)
      throw InputError("observable: gauss:cx,cy,sigma");
    cdouble c{a[0], a[1]};
    double s2 = 2.0 * a[2] * a[2];
    return [c, s2](cdouble z) { return std::exp(-std::norm(z - c) / s2); };
  }
  if (spec.rfind("cos:", 0) == 0 || spec.rfind("sin:", 0) == 0) {
    auto a = split(spec.substr(4));
    if (a.size() != 2) throw InputError("observable: cos:kx,ky / sin:kx,ky");
    bool is_cos = spec[0] == 'c';
    return [a, is_cos](cdouble z) {
      double t = a[0] * z.real() + a[1] * z.imag();
      return is_cos ? std::cos(t) : std::sin(t);
    };
  }
  throw InputError("observable: unknown spec '" + spec +
                   "' (re, im, abs, abs2, gauss:cx,cy,s, cos:kx,ky, sin:kx,ky)");
}

}  // namespace

MixingReport mixing_experiment(const Poly1C& f, const std::string& phi_spec,
                               const std::string& psi_spec, int n_max,
                               const SamplerParams& sampler) {
  auto phi = observable(phi_spec);
  auto psi = observable(psi_spec);
  EmpiricalMeasure m = sample_measure(f, sampler);
  std::size_t N = m.points.size();

  MixingReport rep;
  rep.noise_floor = 3.0 / std::sqrt((double)N);

  double mean_phi = 0.0, mean_psi = 0.0;
  for (const auto& x : m.points) {
    mean_phi += phi(x);
    mean_psi += psi(x);
  }
  mean_phi /= (double)N;
  mean_psi /= (double)N;

  std::vector<cdouble> orbit = m.points;
  for (int n = 0; n <= n_max; ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) acc += psi(m.points[i]) * phi(orbit[i]);
    rep.correlations.push_back(acc / (double)N - mean_psi * mean_phi);
    for (auto& z : orbit) z = f(z);
  }

  // least squares on log|corr_n| over lags above the noise floor
  std::vector<std::pair<double, double>> pts;
  for (int n = 1; n <= n_max; ++n) {
    double c = std::abs(rep.correlations[(std::size_t)n]);
    if (c > rep.noise_floor) pts.emplace_back((double)n, std::log(c));
  }
  rep.fit_points = (int)pts.size();
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double nn = (double)pts.size();
    rep.fitted_exponent = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  }
  return rep;
}

}  // namespace degdyn::onedim
