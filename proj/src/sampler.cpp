#include <algorithm>
#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/parallel.hpp"
#include "degdyn/random_stream.hpp"
#include "degdyn/roots.hpp"

namespace degdyn::onedim {

namespace {

// All preimages of w under f = P/Q: roots of P - w Q, counted with
// multiplicity. Quadratic fast path avoids the general solver in the hot loop.
bool preimages(const RatMap1C& f, cdouble w, std::vector<cdouble>& out) {
  Poly1C num = f.P - f.Q.scaled(w);
  num.trim();
  int d = f.degree();
  if (num.degree() != d) return false;  // branch escaped to infinity
  out.clear();
  if (d == 2) {
    cdouble a = num.c[2], b = num.c[1], c = num.c[0];
    cdouble disc = std::sqrt(b * b - 4.0 * a * c);
    // stable form: avoid cancellation in the smaller root
    cdouble q = (std::abs(b + disc) > std::abs(b - disc)) ? -(b + disc) / 2.0
                                                          : -(b - disc) / 2.0;
    if (std::abs(q) < 1e-300) {
      out.push_back(cdouble{});
      out.push_back(cdouble{});
      return true;
    }
    out.push_back(q / a);
    out.push_back(c / q);
    return true;
  }
  num::RootSet rs = num::roots(num);
  if (!rs.converged) return false;
  out = rs.expanded();
  return (int)out.size() == d;
}

std::vector<cdouble> critical_values(const RatMap1C& f) {
  std::vector<cdouble> vals;
  Poly1C W = f.P.derivative() * f.Q - f.P * f.Q.derivative();
  if (W.degree() >= 1) {
    num::RootSet wr = num::roots(W);
    for (const auto& c : wr.roots) {
      cdouble q = f.Q(c);
      if (std::abs(q) > 1e-12) vals.push_back(f.P(c) / q);
    }
  }
  return vals;
}

}  // namespace

EmpiricalMeasure sample_measure(const RatMap1C& f, const SamplerParams& p) {
  int d = f.degree();
  if (d < 2) throw InputError("sample_measure: degree must be >= 2");
  if (p.depth < 1) throw InputError("sample_measure: depth must be >= 1");

  ExceptionalSet ex = exceptional_points(f);
  for (const auto& e : ex.points)
    if (!e.at_infinity && std::abs(e.z - p.start) < 1e-9)
      throw InputError("sample_measure: start point " + std::to_string(p.start.real()) +
                       (p.start.imag() < 0 ? "-" : "+") +
                       std::to_string(std::abs(p.start.imag())) +
                       "i is exceptional; preimages cannot equidistribute");

  std::vector<cdouble> crit_vals = critical_values(f);

  EmpiricalMeasure m;
  m.points.assign((std::size_t)p.count, cdouble{});
  m.provenance.seed = p.seed;
  m.provenance.depth = p.depth;
  m.provenance.start = p.start;
  std::vector<int> resampled((std::size_t)p.count, 0);
  std::vector<int> perturbed((std::size_t)p.count, 0);

  num::parallel_for((std::size_t)p.count, p.threads, [&](std::size_t i) {
    num::RandomStream rs(p.seed, i);
    std::vector<cdouble> pre;
    for (int attempt = 0;; ++attempt) {
      cdouble w = p.start;
      bool ok = true;
      for (int step = 0; step < p.depth && ok; ++step) {
        // near-critical-value nudge keeps branch counts exact
        for (const auto& v : crit_vals)
          if (std::abs(w - v) < 1e-12) {
            w += 1e-10 * rs.unit_circle();
            perturbed[i]++;
            break;
          }
        ok = preimages(f, w, pre);
        if (ok) w = pre[rs.choice((std::uint64_t)d)];
      }
      if (ok) {
        m.points[i] = w;
        break;
      }
      resampled[i]++;
      if (attempt >= 16)
        throw NumericalError("sample_measure: persistent root-finder failure");
    }
  });

  for (std::size_t i = 0; i < (std::size_t)p.count; ++i) {
    m.provenance.resampled_paths += resampled[i];
    m.provenance.perturbed_nodes += perturbed[i];
  }
  return m;
}

EmpiricalMeasure sample_measure(const Poly1C& f, const SamplerParams& p) {
  return sample_measure(RatMap1C::from_poly(f), p);
}

}  // namespace degdyn::onedim
