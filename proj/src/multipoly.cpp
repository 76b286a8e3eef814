#include "degdyn/multipoly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace degdyn::mapalg {

bool GradedLexGreater::operator()(const ExpVec& a, const ExpVec& b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly MultiPoly::constant(int nvars, GaussRat c) {
  MultiPoly p(nvars);
  if (!c.is_zero()) p.terms_.emplace(ExpVec(nvars, 0), std::move(c));
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
  MultiPoly p(nvars);
  ExpVec e(nvars, 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), GaussRat(1));
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, ExpVec e, GaussRat c) {
  MultiPoly p(nvars);
  if (!c.is_zero()) p.terms_.emplace(std::move(e), std::move(c));
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  // Leading graded-lex term has maximal total degree.
  const ExpVec& e = terms_.begin()->first;
  return (int)std::accumulate(e.begin(), e.end(), 0L);
}

int MultiPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, (int)e[var]);
  return terms_.empty() ? -1 : d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  long d0 = -1;
  for (const auto& [e, c] : terms_) {
    long d = std::accumulate(e.begin(), e.end(), 0L);
    if (d0 < 0) d0 = d;
    if (d != d0) return false;
  }
  return true;
}

bool MultiPoly::depends_on(int var) const {
  for (const auto& [e, c] : terms_)
    if (e[var] > 0) return true;
  return false;
}

const GaussRat& MultiPoly::leading_coeff() const {
  static const GaussRat zero{};
  return terms_.empty() ? zero : terms_.begin()->second;
}

GaussRat MultiPoly::constant_term() const {
  auto it = terms_.find(ExpVec(nvars_, 0));
  return it == terms_.end() ? GaussRat{} : it->second;
}

void MultiPoly::add_term(const ExpVec& e, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  assert(a.nvars_ == b.nvars_);
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  assert(a.nvars_ == b.nvars_);
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  assert(a.nvars_ == b.nvars_);
  MultiPoly r(a.nvars_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  // Generate all products, sort, then merge equal exponent vectors; far
  // cheaper than per-product map insertion at desk sizes.
  std::vector<std::pair<ExpVec, GaussRat>> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  ExpVec e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) {
        e[i] = ea[i] + eb[i];
        if (e[i] >= kExponentGuard)
          throw std::overflow_error("MultiPoly: exponent guard (2^16) exceeded");
      }
      prod.emplace_back(e, ca * cb);
    }
  std::sort(prod.begin(), prod.end(), [](const auto& x, const auto& y) {
    return GradedLexGreater{}(x.first, y.first);
  });
  std::size_t i = 0;
  while (i < prod.size()) {
    GaussRat acc = std::move(prod[i].second);
    std::size_t j = i + 1;
    while (j < prod.size() && prod[j].first == prod[i].first) {
      acc += prod[j].second;
      ++j;
    }
    if (!acc.is_zero())
      r.terms_.emplace_hint(r.terms_.end(), std::move(prod[i].first), std::move(acc));
    i = j;
  }
  return r;
}

MultiPoly MultiPoly::scaled(const GaussRat& c) const {
  MultiPoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(nvars_, GaussRat(1));
  MultiPoly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    ExpVec d = e;
    d[var] -= 1;
    r.add_term(d, c * GaussRat((long)e[var]));
  }
  return r;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> args) const {
  assert((int)args.size() == nvars_);
  int out_vars = args.empty() ? 0 : args[0].nvars();
  MultiPoly r(out_vars);
  // powers of each argument are shared across terms
  std::vector<std::vector<MultiPoly>> powers((std::size_t)nvars_);
  for (int i = 0; i < nvars_; ++i)
    powers[(std::size_t)i].push_back(MultiPoly::constant(out_vars, GaussRat(1)));
  auto arg_pow = [&](int i, std::uint32_t e) -> const MultiPoly& {
    auto& ladder = powers[(std::size_t)i];
    while (ladder.size() <= e) ladder.push_back(ladder.back() * args[(std::size_t)i]);
    return ladder[e];
  };
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(out_vars, c);
    for (int i = 0; i < nvars_; ++i)
      if (e[i] > 0) term = term * arg_pow(i, e[i]);
    r = r + term;
  }
  return r;
}

GaussRat MultiPoly::eval(std::span<const GaussRat> point) const {
  GaussRat acc;
  for (const auto& [e, c] : terms_) {
    GaussRat t = c;
    for (int i = 0; i < nvars_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

std::complex<double> MultiPoly::eval(std::span<const std::complex<double>> point) const {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (int i = 0; i < nvars_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::homogenized(int target) const {
  MultiPoly r(nvars_ + 1);
  for (const auto& [e, c] : terms_) {
    long d = std::accumulate(e.begin(), e.end(), 0L);
    if (d > target) throw std::invalid_argument("homogenized: target below degree");
    ExpVec ext(e.begin(), e.end());
    ext.push_back((std::uint32_t)(target - d));
    if (ext.back() >= kExponentGuard)
      throw std::overflow_error("MultiPoly: exponent guard (2^16) exceeded");
    r.terms_.emplace(std::move(ext), c);
  }
  return r;
}

MultiPoly MultiPoly::dehomogenized(int var) const {
  MultiPoly r(nvars_ - 1);
  for (const auto& [e, c] : terms_) {
    ExpVec d;
    d.reserve(nvars_ - 1);
    for (int i = 0; i < nvars_; ++i)
      if (i != var) d.push_back(e[i]);
    r.add_term(d, c);
  }
  return r;
}

MultiPoly MultiPoly::restricted_zero(int var) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_)
    if (e[var] == 0) r.terms_.emplace(e, c);
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(inverse(leading_coeff()));
}

std::string MultiPoly::str(std::span<const std::string> var_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    GaussRat coeff = c;
    if (!first) {
      // Pull a leading minus out of purely real/imaginary coefficients.
      bool neg = (c.im == 0 && c.re < 0) || (c.re == 0 && c.im < 0);
      os << (neg ? " - " : " + ");
      if (neg) coeff = -c;
    }
    bool any_var = std::any_of(e.begin(), e.end(), [](auto k) { return k > 0; });
    bool unit = coeff.is_one();
    bool needs_parens = coeff.re != 0 && coeff.im != 0;
    if (!any_var || !unit) {
      if (needs_parens && any_var)
        os << "(" << to_string(coeff) << ")";
      else
        os << to_string(coeff);
      if (any_var) os << "*";
    }
    bool first_var = true;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << "*";
      os << var_names[i];
      if (e[i] > 1) os << "^" << e[i];
      first_var = false;
    }
    first = false;
  }
  return os.str();
}

std::string MultiPoly::str() const {
  std::vector<std::string> names;
  for (int i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i));
  return str(names);
}

// ---------------------------------------------------------------------------
// Gaussian-integer content.

namespace {

struct GaussInt {
  mpz_class re, im;
  bool is_zero() const { return re == 0 && im == 0; }
};

// Euclidean division in Z[i]: q = round(a * conj(b) / |b|^2).
GaussInt gi_rem(const GaussInt& a, const GaussInt& b) {
  mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class xr = a.re * b.re + a.im * b.im;
  mpz_class xi = a.im * b.re - a.re * b.im;
  auto round_div = [](const mpz_class& num, const mpz_class& den) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) q += 1;
    return q;
  };
  mpz_class qr = round_div(xr, n), qi = round_div(xi, n);
  return {a.re - (qr * b.re - qi * b.im), a.im - (qr * b.im + qi * b.re)};
}

GaussInt gi_gcd(GaussInt a, GaussInt b) {
  while (!b.is_zero()) {
    GaussInt r = gi_rem(a, b);
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

GaussRat rational_content(const MultiPoly& p) {
  if (p.is_zero()) return GaussRat(1);
  mpz_class den = 1;
  for (const auto& [e, c] : p.terms()) {
    den = lcm(den, c.re.get_den());
    den = lcm(den, c.im.get_den());
  }
  GaussInt g{0, 0};
  for (const auto& [e, c] : p.terms()) {
    GaussInt x{mpz_class(c.re.get_num() * (den / c.re.get_den())),
               mpz_class(c.im.get_num() * (den / c.im.get_den()))};
    g = gi_gcd(g, x);
    if ((g.re == 1 || g.re == -1) && g.im == 0) break;
  }
  if (g.is_zero()) return GaussRat(1);
  GaussRat content(mpq_class(g.re), mpq_class(g.im));
  return content * GaussRat(mpq_class(1, 1) / mpq_class(den));
}

// ---------------------------------------------------------------------------
// Exact division and gcd machinery.

std::optional<MultiPoly> try_divide(const MultiPoly& p, const MultiPoly& d) {
  if (d.is_zero()) return std::nullopt;
  if (d.term_count() == 1) {
    // monomial divisor: subtract exponents termwise
    const auto& [de, dc] = *d.terms().begin();
    GaussRat inv_dc = inverse(dc);
    MultiPoly q(p.nvars());
    for (const auto& [e, c] : p.terms()) {
      ExpVec r(p.nvars());
      for (int i = 0; i < p.nvars(); ++i) {
        if (e[i] < de[i]) return std::nullopt;
        r[i] = e[i] - de[i];
      }
      q.add_term(r, c * inv_dc);
    }
    return q;
  }
  MultiPoly rem = p;
  MultiPoly quot(p.nvars());
  const ExpVec& de = d.terms().begin()->first;
  const GaussRat& dc = d.leading_coeff();
  while (!rem.is_zero()) {
    const ExpVec& re = rem.terms().begin()->first;
    ExpVec qe(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) {
      if (re[i] < de[i]) return std::nullopt;
      qe[i] = re[i] - de[i];
    }
    GaussRat qc = rem.leading_coeff() / dc;
    MultiPoly t = MultiPoly::monomial(p.nvars(), qe, qc);
    quot = quot + t;
    rem = rem - t * d;
  }
  return quot;
}

namespace {

// View of p as a univariate polynomial in `var` with MultiPoly coefficients.
std::vector<MultiPoly> coeffs_in(const MultiPoly& p, int var) {
  int d = std::max(p.degree_in(var), 0);
  std::vector<MultiPoly> cs((std::size_t)d + 1, MultiPoly(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    ExpVec r = e;
    std::uint32_t k = r[var];
    r[var] = 0;
    cs[k].add_term(r, c);
  }
  return cs;
}

MultiPoly content_in(const MultiPoly& p, int var) {
  auto cs = coeffs_in(p, var);
  MultiPoly g(p.nvars());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : poly_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g.is_zero() ? MultiPoly::constant(p.nvars(), GaussRat(1)) : g.monic();
}

MultiPoly exact_div(const MultiPoly& p, const MultiPoly& d) {
  auto q = try_divide(p, d);
  if (!q) throw std::logic_error("poly_gcd: inexact division");
  return *q;
}

// Pseudo-remainder of a by b in `var` (classical prem).
MultiPoly pseudo_rem(const MultiPoly& a, const MultiPoly& b, int var) {
  int da = a.degree_in(var), db = b.degree_in(var);
  auto bc = coeffs_in(b, var);
  const MultiPoly& blc = bc.back();
  MultiPoly r = a;
  int delta = da - db;
  for (int step = 0; step <= delta && !r.is_zero(); ++step) {
    int dr = r.degree_in(var);
    if (dr < db) break;
    auto rc = coeffs_in(r, var);
    MultiPoly rl = rc.back();
    // r <- blc*r - rl*x^(dr-db)*b
    MultiPoly shift = MultiPoly::monomial(a.nvars(), [&] {
      ExpVec e(a.nvars(), 0);
      e[var] = (std::uint32_t)(dr - db);
      return e;
    }(), GaussRat(1));
    r = r * blc - b * shift * rl;
  }
  return r;
}

// PRS gcd of primitive parts (both primitive w.r.t. var, degrees >= 1).
MultiPoly prs_gcd(MultiPoly a, MultiPoly b, int var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree_in(var) == 0) return MultiPoly::constant(a.nvars(), GaussRat(1));
    MultiPoly r = pseudo_rem(a, b, var);
    a = std::move(b);
    if (r.is_zero()) break;
    // Primitive PRS: strip both the polynomial content in the remaining
    // variables and the Gaussian-integer content of the coefficients.
    r = exact_div(r, content_in(r, var));
    b = r.scaled(inverse(rational_content(r)));
  }
  return a;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& p, const MultiPoly& q) {
  if (p.nvars() != q.nvars()) throw std::invalid_argument("poly_gcd: nvars mismatch");
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  if (p.is_constant() || q.is_constant())
    return MultiPoly::constant(p.nvars(), GaussRat(1));

  // Main variable: lowest index present in both, else lowest present in either.
  int var = -1;
  for (int i = 0; i < p.nvars() && var < 0; ++i)
    if (p.depends_on(i) && q.depends_on(i)) var = i;
  if (var < 0) {
    // No shared variable: gcd is the gcd of contents only.
    for (int i = 0; i < p.nvars(); ++i)
      if (p.depends_on(i)) return poly_gcd(content_in(p, i), q);
    return poly_gcd(p, content_in(q, 0));
  }

  MultiPoly cp = content_in(p, var), cq = content_in(q, var);
  MultiPoly pp = exact_div(p, cp), qq = exact_div(q, cq);
  MultiPoly g = poly_gcd(cp, cq) * prs_gcd(pp, qq, var);
  return g.monic();
}

MultiPoly poly_lcm(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() || q.is_zero()) return MultiPoly(p.nvars());
  auto l = try_divide(p * q, poly_gcd(p, q));
  return l->monic();
}

namespace {

// Restriction to the axis line x_j = s, x_i = c_i (i != j) with fixed
// generic rational constants; costs O(terms) scalar operations.
MultiPoly restrict_axis(const MultiPoly& p, int j) {
  static const long cn[] = {5, 7, 11, 13, 17, 19};
  static const long cd[] = {3, 2, 5, 7, 4, 9};
  int n = p.nvars();
  MultiPoly out(1);
  std::vector<std::vector<GaussRat>> pow((std::size_t)n);
  auto const_pow = [&](int i, std::uint32_t e) -> const GaussRat& {
    auto& ladder = pow[(std::size_t)i];
    if (ladder.empty()) {
      mpq_class c(cn[i % 6], cd[i % 6]);
      c.canonicalize();
      ladder.push_back(GaussRat(1));
      ladder.push_back(GaussRat(c));
    }
    while (ladder.size() <= e) ladder.push_back(ladder.back() * ladder[1]);
    return ladder[e];
  };
  for (const auto& [e, c] : p.terms()) {
    GaussRat coeff = c;
    for (int i = 0; i < n; ++i)
      if (i != j && e[(std::size_t)i] > 0) coeff *= const_pow(i, e[(std::size_t)i]);
    out.add_term(ExpVec{e[(std::size_t)j]}, coeff);
  }
  return out;
}

// --- modular coprimality certificate over F_{p^2}, p = 2^61 - 1 (p = 3 mod 4,
// so x^2 + 1 is irreducible and i generates F_{p^2}).

constexpr std::uint64_t kP = (1ull << 61) - 1;

inline std::uint64_t fp_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kP ? s - kP : s;
}
inline std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kP - b;
}
inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 t = (unsigned __int128)a * b;
  std::uint64_t lo = (std::uint64_t)(t & kP);
  std::uint64_t hi = (std::uint64_t)(t >> 61);
  std::uint64_t s = lo + hi;
  return s >= kP ? s - kP : s;
}
inline std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = fp_mul(r, a);
    a = fp_mul(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t fp_inv(std::uint64_t a) { return fp_pow(a, kP - 2); }

struct Fp2 {
  std::uint64_t re = 0, im = 0;
  bool is_zero() const { return re == 0 && im == 0; }
};
inline Fp2 fp2_add(Fp2 a, Fp2 b) { return {fp_add(a.re, b.re), fp_add(a.im, b.im)}; }
inline Fp2 fp2_sub(Fp2 a, Fp2 b) { return {fp_sub(a.re, b.re), fp_sub(a.im, b.im)}; }
inline Fp2 fp2_mul(Fp2 a, Fp2 b) {
  return {fp_sub(fp_mul(a.re, b.re), fp_mul(a.im, b.im)),
          fp_add(fp_mul(a.re, b.im), fp_mul(a.im, b.re))};
}
inline Fp2 fp2_inv(Fp2 a) {
  std::uint64_t n = fp_add(fp_mul(a.re, a.re), fp_mul(a.im, a.im));
  std::uint64_t ni = fp_inv(n);
  return {fp_mul(a.re, ni), fp_mul(kP - a.im % kP, ni)};
}

// mpq mod p; false if the denominator vanishes mod p.
bool mpq_mod(const mpq_class& q, std::uint64_t& out) {
  std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), kP);
  if (den == 0) return false;
  std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), kP);
  bool neg = q.get_num() < 0;
  // mpz_fdiv_ui returns |n| mod p with sign handled by fdiv: for negative n
  // it is already the positive residue, so nothing more to do.
  (void)neg;
  out = fp_mul(num, fp_inv(den));
  return true;
}

bool gaussrat_mod(const GaussRat& c, Fp2& out) {
  return mpq_mod(c.re, out.re) && mpq_mod(c.im, out.im);
}

// gcd over F_{p^2}[s] of the axis restrictions of comps is constant?
// Returns: 1 certified coprime, 0 not certified, -1 certificate unusable.
int axis_certificate_modp(const std::vector<MultiPoly>& comps, int j) {
  static const long cn[] = {5, 7, 11, 13, 17, 19};
  static const long cd[] = {3, 2, 5, 7, 4, 9};
  std::vector<Fp2> g;  // running gcd, ascending coefficients
  for (const auto& p : comps) {
    if (p.is_zero()) continue;
    int n = p.nvars();
    std::vector<Fp2> r((std::size_t)std::max(p.degree_in(j), 0) + 1);
    std::vector<std::vector<std::uint64_t>> pow((std::size_t)n);
    auto const_pow = [&](int i, std::uint32_t e) -> std::uint64_t {
      auto& ladder = pow[(std::size_t)i];
      if (ladder.empty()) {
        std::uint64_t c = fp_mul(cn[i % 6] % kP, fp_inv(cd[i % 6] % kP));
        ladder.push_back(1);
        ladder.push_back(c);
      }
      while (ladder.size() <= e) ladder.push_back(fp_mul(ladder.back(), ladder[1]));
      return ladder[e];
    };
    for (const auto& [e, c] : p.terms()) {
      Fp2 v;
      if (!gaussrat_mod(c, v)) return -1;
      std::uint64_t scale = 1;
      for (int i = 0; i < n; ++i)
        if (i != j && e[(std::size_t)i] > 0)
          scale = fp_mul(scale, const_pow(i, e[(std::size_t)i]));
      Fp2 sv{fp_mul(v.re, scale), fp_mul(v.im, scale)};
      r[e[(std::size_t)j]] = fp2_add(r[e[(std::size_t)j]], sv);
    }
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    if (r.empty()) return -1;  // restriction vanished mod p: unusable
    // Euclid
    if (g.empty()) {
      g = std::move(r);
    } else {
      std::vector<Fp2> a = std::move(g), b = std::move(r);
      if (a.size() < b.size()) std::swap(a, b);
      while (b.size() > 1) {
        // a mod b
        Fp2 lead_inv = fp2_inv(b.back());
        while (a.size() >= b.size()) {
          Fp2 f = fp2_mul(a.back(), lead_inv);
          std::size_t off = a.size() - b.size();
          for (std::size_t i = 0; i < b.size(); ++i)
            a[off + i] = fp2_sub(a[off + i], fp2_mul(f, b[i]));
          while (!a.empty() && a.back().is_zero()) a.pop_back();
          if (a.empty()) break;
        }
        if (a.empty()) {
          a = b;
          break;
        }
        std::swap(a, b);
      }
      g = std::move(a);
      if (b.size() == 1 && !b[0].is_zero()) g = {Fp2{1, 0}};
    }
    if (g.size() == 1 && !g[0].is_zero()) return 1;
  }
  return g.size() == 1 && !g[0].is_zero() ? 1 : 0;
}

}  // namespace

void reduce_common_factor(std::vector<MultiPoly>& comps) {
  if (comps.empty()) return;
  int n = comps[0].nvars();

  // 1. common monomial factor (cheap; covers the contracted-hyperplane case)
  ExpVec mins;
  bool any = false;
  for (const auto& p : comps) {
    if (p.is_zero()) continue;
    ExpVec m(n, kExponentGuard);
    for (const auto& [e, c] : p.terms())
      for (int i = 0; i < n; ++i)
        m[(std::size_t)i] = std::min(m[(std::size_t)i], e[(std::size_t)i]);
    if (!any) {
      mins = m;
      any = true;
    } else {
      for (int i = 0; i < n; ++i)
        mins[(std::size_t)i] = std::min(mins[(std::size_t)i], m[(std::size_t)i]);
    }
  }
  if (!any) return;
  if (std::any_of(mins.begin(), mins.end(), [](auto e) { return e > 0; })) {
    MultiPoly mono = MultiPoly::monomial(n, mins, GaussRat(1));
    for (auto& p : comps)
      if (!p.is_zero()) p = *try_divide(p, mono);
  }

  // 2. axis-line certificates: every nonconstant common factor depends on
  // some variable and (for generic fixed constants) survives in that axis
  // restriction; a constant restricted gcd mod p forces a constant gcd.
  bool certified = true;
  for (int j = 0; j < n && certified; ++j) {
    int verdict = axis_certificate_modp(comps, j);
    if (verdict == 1) continue;
    // exact univariate check before giving up on the axis
    MultiPoly g1(1);
    bool axis_ok = false;
    for (const auto& p : comps) {
      if (p.is_zero()) continue;
      MultiPoly r = restrict_axis(p, j);
      g1 = g1.is_zero() ? r : poly_gcd(g1, r);
      if (g1.is_constant()) {
        axis_ok = true;
        break;
      }
    }
    certified = axis_ok;
  }
  if (certified) return;

  // 3. full multivariate gcd; bounded so a pathological drop cannot stall
  // the desk pipeline (the caller treats the overflow as a budget stop).
  long maxdeg = 0;
  for (const auto& p : comps) maxdeg = std::max(maxdeg, (long)p.total_degree());
  if (maxdeg > 96)
    throw std::overflow_error("common-factor reduction beyond desk budget");
  MultiPoly g(n);
  for (const auto& p : comps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p : poly_gcd(g, p);
    if (g.is_constant()) return;
  }
  if (!g.is_constant())
    for (auto& p : comps)
      if (!p.is_zero()) p = *try_divide(p, g);
}

}  // namespace degdyn::mapalg
