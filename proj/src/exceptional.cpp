#include <algorithm>
#include <cmath>

#include "degdyn/onedim.hpp"
#include "degdyn/roots.hpp"

namespace degdyn::onedim {

namespace {

// Conjugation by 1/z: swaps 0 and infinity.
RatMap1C flip_chart(const RatMap1C& f) {
  int d = f.degree();
  auto rev = [&](const Poly1C& p) {
    std::vector<cdouble> c((std::size_t)d + 1, cdouble{});
    for (int i = 0; i <= p.degree(); ++i) c[(std::size_t)(d - i)] = p.c[(std::size_t)i];
    return Poly1C(std::move(c));
  };
  RatMap1C g;
  g.P = rev(f.Q);
  g.Q = rev(f.P);
  return g;
}

P1Point apply(const RatMap1C& f, const P1Point& x) {
  if (x.at_infinity) {
    RatMap1C g = flip_chart(f);
    cdouble num = g.P(cdouble{}), den = g.Q(cdouble{});
    if (std::abs(den) < 1e-13 * (1.0 + std::abs(num))) return {cdouble{}, true};
    cdouble v = num / den;
    // chart back: value v in the flipped chart means 1/v in the original
    if (std::abs(v) < 1e-300) return {cdouble{}, true};
    return {1.0 / v, false};
  }
  cdouble num = f.P(x.z), den = f.Q(x.z);
  if (std::abs(den) < 1e-12 * (1.0 + std::abs(num))) return {cdouble{}, true};
  return {num / den, false};
}

// Vanishing order of p at x0, decided against the scaled derivative ladder.
int vanishing_order(const Poly1C& p, cdouble x0, int cap) {
  Poly1C d = p;
  double gauge = 0.0;
  for (const auto& c : p.c) gauge = std::max(gauge, std::abs(c));
  gauge *= std::pow(std::max(1.0, std::abs(x0)), (double)p.degree());
  if (gauge == 0.0) return cap;
  int ord = 0;
  double fact = 1.0;
  while (ord <= cap && ord <= p.degree()) {
    if (std::abs(d(x0)) > 1e-8 * gauge * fact) return ord;
    d = d.derivative();
    ++ord;
    fact *= ord;
  }
  return ord;
}

}  // namespace

int local_degree(const RatMap1C& f, const P1Point& x) {
  if (x.at_infinity) return local_degree(flip_chart(f), {cdouble{}, false});
  cdouble qv = f.Q(x.z);
  cdouble pv = f.P(x.z);
  if (std::abs(qv) < 1e-10 * (1.0 + std::abs(pv))) {
    // f(x) = infinity: local degree = vanishing order of Q
    return std::max(1, vanishing_order(f.Q, x.z, f.degree()));
  }
  cdouble v = pv / qv;
  // order of x as a zero of P - v Q
  Poly1C num = f.P - f.Q.scaled(v);
  return std::max(1, vanishing_order(num, x.z, f.degree()));
}

ExceptionalSet exceptional_points(const RatMap1C& f) {
  int d = f.degree();
  if (d < 2) throw InputError("exceptional_points: degree must be >= 2");

  std::vector<P1Point> candidates;
  // finite totally ramified candidates sit in the critical set with maximal
  // multiplicity: (d-1)-fold roots of the Wronskian, or d-fold poles
  Poly1C W = f.P.derivative() * f.Q - f.P * f.Q.derivative();
  if (W.degree() >= 1) {
    num::RootSet wr = num::roots(W);
    for (std::size_t i = 0; i < wr.roots.size(); ++i)
      if (wr.multiplicity[i] >= d - 1) candidates.push_back({wr.roots[i], false});
  }
  if (f.Q.degree() >= 1) {
    num::RootSet qr = num::roots(f.Q);
    for (std::size_t i = 0; i < qr.roots.size(); ++i)
      if (qr.multiplicity[i] >= d) candidates.push_back({qr.roots[i], false});
  }
  candidates.push_back({cdouble{}, true});  // infinity, via the flipped chart

  ExceptionalSet out;
  for (const auto& c : candidates) {
    bool dup = std::any_of(out.points.begin(), out.points.end(), [&](const P1Point& p) {
      if (p.at_infinity != c.at_infinity) return false;
      return p.at_infinity || std::abs(p.z - c.z) < 1e-8;
    });
    if (dup) continue;
    // three-step orbit test: d(f, x) = d(f, fx) = d(f, f^2 x) = degree
    P1Point x = c;
    bool total = true;
    for (int step = 0; step < 3 && total; ++step) {
      total = local_degree(f, x) == d;
      if (step < 2) x = apply(f, x);
    }
    if (total) out.points.push_back(c);
  }

  if (out.points.size() > 2)
    throw NumericalError("exceptional_points: more than two candidates survived "
                         "the orbit test (numerical degeneracy)");
  if (out.points.size() == 2)
    out.tag = ExceptionalSet::Tag::PowerMap;
  else if (out.points.size() == 1)
    out.tag = ExceptionalSet::Tag::Polynomial;
  return out;
}

}  // namespace degdyn::onedim
