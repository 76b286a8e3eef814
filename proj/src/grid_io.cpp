#include "degdyn/grid_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace degdyn::num {

GridSpec GridSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 5 && parts.size() != 6)
    throw std::invalid_argument("grid spec needs x0:x1:y0:y1:n[:ny]");
  GridSpec g;
  g.x0 = std::stod(parts[0]);
  g.x1 = std::stod(parts[1]);
  g.y0 = std::stod(parts[2]);
  g.y1 = std::stod(parts[3]);
  g.nx = std::stoi(parts[4]);
  g.ny = parts.size() == 6 ? std::stoi(parts[5]) : g.nx;
  if (g.nx < 2 || g.ny < 2 || g.x1 <= g.x0 || g.y1 <= g.y0)
    throw std::invalid_argument("degenerate grid spec");
  return g;
}

void write_pgm16(const std::string& path, const GridSpec& grid,
                 const std::vector<double>& values) {
  if ((int)values.size() != grid.nx * grid.ny)
    throw std::invalid_argument("write_pgm16: size mismatch");
  double vmin = *std::min_element(values.begin(), values.end());
  double vmax = *std::max_element(values.begin(), values.end());
  double span = vmax > vmin ? vmax - vmin : 1.0;

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "P5\n" << grid.nx << " " << grid.ny << "\n65535\n";
  for (int j = grid.ny - 1; j >= 0; --j)
    for (int i = 0; i < grid.nx; ++i) {
      double v = values[(std::size_t)(j * grid.nx + i)];
      unsigned pix = (unsigned)std::lround((v - vmin) / span * 65535.0);
      f.put((char)(pix >> 8));
      f.put((char)(pix & 0xff));
    }

  nlohmann::json side;
  side["format"] = "pgm16";
  side["vmin"] = vmin;
  side["vmax"] = vmax;
  side["mapping"] = "value = vmin + pix * (vmax - vmin) / 65535";
  side["grid"] = {{"x0", grid.x0}, {"x1", grid.x1}, {"y0", grid.y0},
                  {"y1", grid.y1}, {"nx", grid.nx}, {"ny", grid.ny}};
  side["row0"] = "top (largest y)";
  std::ofstream sf(path + ".json");
  sf << side.dump(2) << "\n";
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f.precision(17);
  for (std::size_t i = 0; i < header.size(); ++i)
    f << header[i] << (i + 1 < header.size() ? "," : "");
  f << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      f << row[i] << (i + 1 < row.size() ? "," : "");
    f << "\n";
  }
}

}  // namespace degdyn::num
