#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "efk/ordinal.hpp"

namespace efk::logic {

// x_0 + ... + x_{k-1} + units*u. Variables may repeat; the empty term is 0.
struct LinearTerm {
  std::vector<std::string> vars;
  unsigned long units = 0;

  bool empty() const { return vars.empty() && units == 0; }
  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

enum class Kind { Equal, LessEq, Not, And, Or, Exists, Forall, Schema };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Kind kind = Kind::Equal;
  LinearTerm lhs, rhs;              // Equal, LessEq
  std::vector<Formula> children;    // Not (one), And, Or
  std::string var;                  // Exists, Forall
  std::string name;                 // Schema
  Ordinal rank;                     // Schema: supplied rank
  std::vector<std::string> free;    // Schema: declared free variables
};

Formula equal(LinearTerm lhs, LinearTerm rhs);
Formula less_eq(LinearTerm lhs, LinearTerm rhs);
Formula negation(Formula f);
Formula conjunction(std::vector<Formula> fs);
Formula disjunction(std::vector<Formula> fs);
Formula exists(const std::string& var, Formula body);
Formula forall(const std::string& var, Formula body);
// Opaque stand-in for a countable family; only its rank is known.
Formula schema(const std::string& name, Ordinal rank, std::vector<std::string> free = {});

Ordinal qr(const Formula& f);
std::set<std::string> free_vars(const Formula& f);
bool contains_schema(const Formula& f);
bool uses_order(const Formula& f);

// A finite structure for either language: a commutative addition table
// with a zero, the distinguished element u, and optionally an order.
struct FiniteStructure {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> add;
  std::size_t zero = 0;
  std::size_t unit = 0;
  std::optional<std::vector<std::vector<bool>>> leq;

  std::size_t term_value(const LinearTerm& t, const std::map<std::string, std::size_t>& env) const;
};

using Assignment = std::map<std::string, std::size_t>;

// Tarski semantics with exhaustive quantification.
bool eval(const Formula& f, const FiniteStructure& m, const Assignment& env);

// Random formulas over a fixed pool of variable names.
struct FormulaGenerator {
  std::vector<std::string> vars{"x", "y", "z"};
  unsigned max_qr = 3;
  unsigned max_width = 2;
  bool allow_order = true;
  bool allow_schema = false;
  unsigned max_units = 2;

  Formula operator()(std::mt19937_64& rng) const;

 private:
  Formula gen(std::mt19937_64& rng, unsigned qr_budget, unsigned depth) const;
  LinearTerm term(std::mt19937_64& rng) const;
};

}  // namespace efk::logic
