#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/parallel.hpp"

namespace degdyn::onedim {

SweepGrid parameter_sweep(const num::GridSpec& grid, int green_iters, int threads) {
  if (std::max({std::abs(grid.x0), std::abs(grid.x1), std::abs(grid.y0),
                std::abs(grid.y1)}) > 10.0)
    throw InputError("parameter_sweep: grid must stay within |t| <= 10");
  SweepGrid out;
  out.grid = grid;
  out.chi.assign((std::size_t)grid.nx * grid.ny, 0.0);

  GreenParams gp;
  gp.max_iter = green_iters;
  num::parallel_for((std::size_t)grid.nx * grid.ny, threads, [&](std::size_t idx) {
    int i = (int)(idx % (std::size_t)grid.nx);
    int j = (int)(idx / (std::size_t)grid.nx);
    cdouble t = grid.node(i, j);
    Poly1C f({t, cdouble{0.0, 0.0}, cdouble{1.0, 0.0}});  // z^2 + t
    out.chi[idx] = std::log(2.0) + green(f, cdouble{}, gp).value;
  });

  // discrete submean over the 8-neighbor stencil
  long interior = 0, good = 0;
  for (int j = 1; j + 1 < grid.ny; ++j)
    for (int i = 1; i + 1 < grid.nx; ++i) {
      double mean = 0.0;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          mean += out.chi[(std::size_t)((j + dj) * grid.nx + (i + di))];
        }
      mean /= 8.0;
      ++interior;
      if (mean >= out.chi[(std::size_t)(j * grid.nx + i)] - 1e-3) ++good;
    }
  out.submean_fraction = interior ? (double)good / (double)interior : 1.0;
  return out;
}

}  // namespace degdyn::onedim
