#include "degdyn/map_parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace degdyn::mapalg {

namespace {

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    std::size_t start = i_;
    if (i_ >= s_.size()) {
      tok_ = {Token::End, "", start};
      return;
    }
    char c = s_[i_];
    if (std::isdigit((unsigned char)c) || (c == '.' && i_ + 1 < s_.size() &&
                                           std::isdigit((unsigned char)s_[i_ + 1]))) {
      std::size_t j = i_;
      bool dot = false;
      while (j < s_.size() &&
             (std::isdigit((unsigned char)s_[j]) || (!dot && s_[j] == '.'))) {
        if (s_[j] == '.') dot = true;
        ++j;
      }
      tok_ = {Token::Number, s_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum((unsigned char)s_[j]) || s_[j] == '_'))
        ++j;
      tok_ = {Token::Ident, s_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    tok_ = {Token::Op, std::string(1, c), start};
    ++i_;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Token tok_;
};

// First pass parses into an expression over *named* variables; names are
// bound to coordinate indices once the whole list is known.
struct Expr {
  // rational function over the ordered set of names seen so far
  RatFunc value;
};

class ExprParser {
 public:
  explicit ExprParser(Lexer& lex, std::vector<std::string>& names)
      : lex_(lex), names_(names) {}

  RatFunc parse_expr() {
    RatFunc v = parse_term();
    while (lex_.peek().kind == Token::Op &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      std::string op = lex_.take().text;
      RatFunc rhs = parse_term();
      v = op == "+" ? align(v) + align(rhs) : align(v) - align(rhs);
    }
    return align(v);
  }

  // Re-expands a RatFunc to the current variable count (names_ can grow while
  // parsing later factors).
  RatFunc align(const RatFunc& v) const {
    int n = (int)names_.size();
    if (v.nvars() == n) return v;
    auto extend = [&](const MultiPoly& p) {
      MultiPoly r(n);
      for (const auto& [e, c] : p.terms()) {
        ExpVec x(n, 0);
        std::copy(e.begin(), e.end(), x.begin());
        r.add_term(x, c);
      }
      return r;
    };
    RatFunc r;
    r.num = extend(v.num);
    r.den = extend(v.den);
    return r;
  }

 private:
  RatFunc parse_term() {
    RatFunc v = parse_factor();
    while (lex_.peek().kind == Token::Op &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      Token op = lex_.take();
      RatFunc rhs = parse_factor();
      try {
        v = op.text == "*" ? align(v) * align(rhs) : align(v) / align(rhs);
      } catch (const std::domain_error&) {
        throw ParseError("division by zero", op.pos);
      } catch (const std::invalid_argument&) {
        throw ParseError("division by zero", op.pos);
      }
    }
    return v;
  }

  RatFunc parse_factor() {
    RatFunc base = parse_unary();
    if (lex_.peek().kind == Token::Op && lex_.peek().text == "^") {
      lex_.take();
      Token t = lex_.peek();
      if (t.kind != Token::Number || t.text.find('.') != std::string::npos)
        throw ParseError("expected integer exponent", t.pos);
      lex_.take();
      unsigned long e = std::stoul(t.text);
      if (e >= kExponentGuard)
        throw ParseError("exponent exceeds guard (2^16)", t.pos);
      return align(base).pow((unsigned)e);
    }
    return base;
  }

  RatFunc parse_unary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Op && t.text == "-") {
      lex_.take();
      return -parse_unary();
    }
    if (t.kind == Token::Op && t.text == "+") {
      lex_.take();
      return parse_unary();
    }
    return parse_atom();
  }

  RatFunc parse_atom() {
    Token t = lex_.peek();
    if (t.kind == Token::Number) {
      lex_.take();
      return RatFunc::from_poly(
          MultiPoly::constant((int)names_.size(), GaussRat(decimal_to_mpq(t))));
    }
    if (t.kind == Token::Ident) {
      lex_.take();
      if (t.text == "i")
        return RatFunc::from_poly(MultiPoly::constant(
            (int)names_.size(), GaussRat(mpq_class(0), mpq_class(1))));
      int idx = var_index(t.text);
      return RatFunc::from_poly(MultiPoly::variable((int)names_.size(), idx));
    }
    if (t.kind == Token::Op && t.text == "(") {
      lex_.take();
      RatFunc v = parse_expr();
      if (!(lex_.peek().kind == Token::Op && lex_.peek().text == ")"))
        throw ParseError("expected ')'", lex_.peek().pos);
      lex_.take();
      return v;
    }
    throw ParseError("unexpected token '" + t.text + "'", t.pos);
  }

  mpq_class decimal_to_mpq(const Token& t) const {
    auto dot = t.text.find('.');
    if (dot == std::string::npos) return mpq_class(t.text);
    std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
    std::size_t frac = t.text.size() - dot - 1;
    mpz_class den = 1;
    for (std::size_t j = 0; j < frac; ++j) den *= 10;
    mpq_class q(mpz_class(digits), den);
    q.canonicalize();
    return q;
  }

  int var_index(const std::string& name) {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it != names_.end()) return (int)(it - names_.begin());
    names_.push_back(name);
    return (int)names_.size() - 1;
  }

  Lexer& lex_;
  std::vector<std::string>& names_;
};

// Permutes/embeds a RatFunc over `names` into a k-variable ring where name j
// maps to slot[j].
MultiPoly remap(const MultiPoly& p, const std::vector<int>& slot, int k) {
  MultiPoly r(k);
  for (const auto& [e, c] : p.terms()) {
    ExpVec x(k, 0);
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] > 0) x[(std::size_t)slot[j]] = e[j];
    r.add_term(x, c);
  }
  return r;
}

// Matches the set of used names against accepted coordinate conventions.
std::vector<int> bind_names(const std::vector<std::string>& names, int k,
                            bool homogeneous, std::size_t err_pos) {
  int nc = homogeneous ? k + 1 : k;
  std::vector<std::vector<std::string>> conventions;
  if (homogeneous) {
    std::vector<std::string> xs, zs;
    for (int i = 0; i <= k; ++i) xs.push_back("x" + std::to_string(i));
    for (int i = 0; i <= k; ++i) zs.push_back("z" + std::to_string(i));
    conventions.push_back(xs);
    conventions.push_back(zs);
    if (k == 2) {
      conventions.push_back({"x", "y", "z"});
      conventions.push_back({"z", "w", "t"});
      conventions.push_back({"x", "y", "t"});
    }
    if (k == 3) {
      conventions.push_back({"x", "y", "z", "t"});
      conventions.push_back({"z1", "z2", "z3", "t"});
    }
  } else {
    if (k == 1) {
      conventions.push_back({"z"});
      conventions.push_back({"x"});
      conventions.push_back({"w"});
    }
    if (k == 2) {
      conventions.push_back({"z", "w"});
      conventions.push_back({"x", "y"});
    }
    std::vector<std::string> zs, xs;
    for (int i = 1; i <= k; ++i) zs.push_back("z" + std::to_string(i));
    for (int i = 1; i <= k; ++i) xs.push_back("x" + std::to_string(i));
    conventions.push_back(zs);
    if (k == 3) conventions.push_back({"x", "y", "z"});
    conventions.push_back(xs);
  }
  for (const auto& conv : conventions) {
    bool ok = true;
    std::vector<int> slot(names.size(), -1);
    for (std::size_t j = 0; j < names.size() && ok; ++j) {
      auto it = std::find(conv.begin(), conv.end(), names[j]);
      if (it == conv.end())
        ok = false;
      else
        slot[j] = (int)(it - conv.begin());
    }
    if (ok) return slot;
  }
  (void)nc;
  std::string msg = "unknown variable set {";
  for (std::size_t j = 0; j < names.size(); ++j)
    msg += (j ? ", " : "") + names[j];
  msg += "} for this model";
  throw ParseError(msg, err_pos);
}

}  // namespace

namespace {

// True if text is "( ... , ... )" with the opening paren matched by the final
// character and at least one comma at depth 1.
bool is_affine_list(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos || s[a] != '(' || s[b] != ')') return false;
  int depth = 0;
  bool comma = false;
  for (std::size_t i = a; i <= b; ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') {
      --depth;
      if (depth == 0 && i != b) return false;
    }
    if (s[i] == ',' && depth == 1) comma = true;
  }
  return comma;
}

}  // namespace

ParsedMap parse_map(const std::string& text, const ModelSpec& model) {
  Lexer lex(text);
  std::vector<std::string> names;
  ExprParser ep(lex, names);

  bool bracket = lex.peek().kind == Token::Op && lex.peek().text == "[";
  std::vector<RatFunc> comps;

  if (bracket) {
    lex.take();
    comps.push_back(ep.parse_expr());
    while (lex.peek().kind == Token::Op && lex.peek().text == ":") {
      lex.take();
      comps.push_back(ep.parse_expr());
    }
    if (!(lex.peek().kind == Token::Op && lex.peek().text == "]"))
      throw ParseError("expected ':' or ']'", lex.peek().pos);
    lex.take();
  } else if (is_affine_list(text)) {
    lex.take();  // '('
    comps.push_back(ep.parse_expr());
    while (lex.peek().kind == Token::Op && lex.peek().text == ",") {
      lex.take();
      comps.push_back(ep.parse_expr());
    }
    if (!(lex.peek().kind == Token::Op && lex.peek().text == ")"))
      throw ParseError("expected ',' or ')'", lex.peek().pos);
    lex.take();
  } else {
    comps.push_back(ep.parse_expr());
  }

  if (lex.peek().kind != Token::End)
    throw ParseError("trailing input", lex.peek().pos);

  bool homogeneous_input = bracket;
  int k_in = homogeneous_input ? (int)comps.size() - 1 : (int)comps.size();
  int k = model.model == MapModel::BiProj ? 2 : model.k;
  if (k_in != k)
    throw ParseError("component count implies k=" + std::to_string(k_in) +
                         ", model expects k=" + std::to_string(k),
                     0);

  auto slots = bind_names(names, k, homogeneous_input, 0);
  int ring = homogeneous_input ? k + 1 : k;
  for (auto& c : comps) {
    c = ep.align(c);
    c.num = remap(c.num, slots, ring);
    c.den = remap(c.den, slots, ring);
  }

  if (homogeneous_input) {
    if (model.model != MapModel::Proj)
      throw ParseError("homogeneous input requires a projective model", 0);
    std::vector<MultiPoly> polys;
    for (auto& c : comps) {
      if (!c.is_polynomial())
        throw ParseError("rational component in homogeneous model", 0);
      MultiPoly p = c.num.scaled(inverse(c.den.leading_coeff()));
      polys.push_back(std::move(p));
    }
    try {
      return ProjMap::make(k, std::move(polys));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 0);
    }
  }

  AffineMap f;
  f.k = k;
  f.comps = std::move(comps);
  for (const auto& c : f.comps)
    if (c.den.is_zero()) throw ParseError("zero denominator", 0);

  switch (model.model) {
    case MapModel::Affine:
      return f;
    case MapModel::Proj:
      return homogenize_proj(f);
    case MapModel::BiProj:
      return homogenize_biproj(f);
  }
  throw ParseError("unreachable", 0);
}

AffineMap parse_affine(const std::string& text, int k) {
  return std::get<AffineMap>(parse_map(text, {MapModel::Affine, k}));
}

ProjMap parse_proj(const std::string& text, int k) {
  return std::get<ProjMap>(parse_map(text, {MapModel::Proj, k}));
}

MultiPoly parse_poly1_exact(const std::string& text) {
  AffineMap f = parse_affine(text, 1);
  if (!f.comps[0].is_polynomial())
    throw ParseError("expected a polynomial", 0);
  return f.comps[0].num.scaled(inverse(f.comps[0].den.leading_coeff()));
}

}  // namespace degdyn::mapalg
