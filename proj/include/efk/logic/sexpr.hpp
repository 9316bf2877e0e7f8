#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "efk/logic/discrete.hpp"

namespace efk::logic {

// Generic S-expression tree.
struct Sexpr {
  std::string atom;  // set when list is empty and is_atom
  std::vector<Sexpr> list;
  bool is_atom = false;
  std::size_t position = 0;

  std::string str() const;
};

Sexpr parse_sexpr(std::string_view text);

// Formula syntax:
//   (= t t) (<= t t) (not f) (and f...) (or f...)
//   (exists x f) (exists (x y) f) (forall ...) (schema Name rank x...)
// Terms: 0, u, 3u, a variable, or (+ item...).
Formula parse_formula(std::string_view text);
std::string to_sexpr(const Formula& f);
std::string term_str(const LinearTerm& t);

}  // namespace efk::logic
