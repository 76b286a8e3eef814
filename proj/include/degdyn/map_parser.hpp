#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "degdyn/maps.hpp"

namespace degdyn::mapalg {

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(std::string msg, std::size_t off)
      : std::runtime_error(std::move(msg)), offset(off) {}
};

enum class MapModel { Affine, Proj, BiProj };

struct ModelSpec {
  MapModel model = MapModel::Affine;
  int k = 2;  // ambient dimension (ignored for BiProj, which is k = 2)
};

using ParsedMap = std::variant<AffineMap, ProjMap, BiProjMap>;

// Expression lists over +,-,*,/,^ with integer, rational and decimal literals
// and the imaginary unit i. Bracketed lists `[p0 : ... : pk]` are homogeneous,
// parenthesised lists `(f1, ..., fk)` affine; a bare expression is a
// one-variable affine map. Affine input under a projective model is
// homogenized. See docs/grammar.ebnf.
ParsedMap parse_map(const std::string& text, const ModelSpec& model);

// Convenience wrappers.
AffineMap parse_affine(const std::string& text, int k);
ProjMap parse_proj(const std::string& text, int k);

// Single expression over one variable (z or x), exact coefficients.
MultiPoly parse_poly1_exact(const std::string& text);

}  // namespace degdyn::mapalg
