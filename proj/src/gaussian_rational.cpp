#include "degdyn/gaussian_rational.hpp"

#include <stdexcept>

namespace degdyn::mapalg {

GaussRat inverse(const GaussRat& a) {
  mpq_class n = a.norm();
  if (n == 0) throw std::domain_error("GaussRat: division by zero");
  return {a.re / n, -a.im / n};
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * inverse(b); }

static std::string rat_str(const mpq_class& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

std::string to_string(const GaussRat& a) {
  if (a.im == 0) return rat_str(a.re);
  std::string im_part;
  if (a.im == 1)
    im_part = "i";
  else if (a.im == -1)
    im_part = "-i";
  else
    im_part = rat_str(a.im) + "*i";
  if (a.re == 0) return im_part;
  if (a.im > 0) return rat_str(a.re) + " + " + (a.im == 1 ? "i" : rat_str(a.im) + "*i");
  mpq_class neg = -a.im;
  return rat_str(a.re) + " - " + (neg == 1 ? "i" : rat_str(neg) + "*i");
}

}  // namespace degdyn::mapalg
