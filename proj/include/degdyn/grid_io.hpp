#pragma once

#include <complex>
#include <string>
#include <vector>

namespace degdyn::num {

// Rectangular evaluation grid, parsed from "x0:x1:y0:y1:n" or
// "x0:x1:y0:y1:nx:ny". Node (i, j) sits at (x0 + i*dx, y0 + j*dy).
struct GridSpec {
  double x0 = -2, x1 = 2, y0 = -2, y1 = 2;
  int nx = 0, ny = 0;

  static GridSpec parse(const std::string& text);
  double dx() const { return nx > 1 ? (x1 - x0) / (nx - 1) : 0.0; }
  double dy() const { return ny > 1 ? (y1 - y0) / (ny - 1) : 0.0; }
  std::complex<double> node(int i, int j) const {
    return {x0 + i * dx(), y0 + j * dy()};
  }
};

// 16-bit big-endian P5 with a JSON sidecar recording the affine pixel->value
// map: value = vmin + pix * (vmax - vmin) / 65535. Row 0 is the top of the
// image (largest y).
void write_pgm16(const std::string& path, const GridSpec& grid,
                 const std::vector<double>& values);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace degdyn::num
