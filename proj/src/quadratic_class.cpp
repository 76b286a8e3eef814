#include <cmath>

#include "degdyn/degrees.hpp"

namespace degdyn::degrees {

namespace {

struct ClassEntry {
  double l1, l2;
  const char* name;
};

// Degree pairs realized by quadratic plane maps: the two birational families
// plus the four pairs realized by skew-type quadratics, with (p,q,r) data
// (l2 = pq; l1 = r or a 2-cycle geometric mean).
const ClassEntry kClasses[] = {
    {1.6180339887498948482, 1.0, "(golden,1)"},
    {2.0, 1.0, "(2,1)"},
    {1.4142135623730950488, 2.0, "(sqrt2,2)"},
    {1.6180339887498948482, 2.0, "(golden,2)"},
    {2.0, 3.0, "(2,3)"},
    {2.0, 4.0, "(2,4)"},
};

}  // namespace

QuadraticClass classify_quadratic(const mapalg::AffineMap& f, std::uint64_t seed) {
  if (f.k != 2) throw InputError("classify_quadratic: k = 2 required");
  long dmax = 0;
  for (const auto& c : f.comps)
    dmax = std::max(dmax, (long)std::max(c.num.total_degree(), c.den.total_degree()));
  if (dmax != 2) throw InputError("classify_quadratic: max component degree must be 2");

  // Stability shows up well inside N=12; the tail refines the ratio estimate.
  const int N = 30;
  QuadraticClass out;
  out.on_p2 = degree_sequence(homogenize_proj(f), N);
  out.on_biproj = degree_sequence(homogenize_biproj(f), N);

  if (out.on_p2.stable) {
    out.lambda1 = (double)out.on_p2.d[0];
  } else if (out.on_biproj.stable) {
    out.lambda1 = spectral_radius(out.on_biproj.B[0]);
  } else {
    out.lambda1 = out.on_biproj.lambda1_err < out.on_p2.lambda1_err
                      ? out.on_biproj.lambda1
                      : out.on_p2.lambda1;
    out.warning = "neither P2 nor P1xP1 is 1-stable within N=12; lambda1 is an estimate";
  }
  out.lambda2 = (double)topological_degree(f, 3, seed);

  if (out.warning.empty()) {
    for (const auto& cls : kClasses)
      if (std::abs(out.lambda1 - cls.l1) < 1e-6 && std::abs(out.lambda2 - cls.l2) < 1e-6) {
        out.matched_class = cls.name;
        break;
      }
  }
  return out;
}

}  // namespace degdyn::degrees
