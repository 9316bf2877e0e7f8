#include "efk/logic/discrete.hpp"

#include <algorithm>

#include "efk/errors.hpp"

namespace efk::logic {

namespace {
Formula make(Node n) { return std::make_shared<const Node>(std::move(n)); }
}  // namespace

Formula equal(LinearTerm lhs, LinearTerm rhs) {
  Node n;
  n.kind = Kind::Equal;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return make(std::move(n));
}

Formula less_eq(LinearTerm lhs, LinearTerm rhs) {
  Node n;
  n.kind = Kind::LessEq;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return make(std::move(n));
}

Formula negation(Formula f) {
  Node n;
  n.kind = Kind::Not;
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula conjunction(std::vector<Formula> fs) {
  Node n;
  n.kind = Kind::And;
  n.children = std::move(fs);
  return make(std::move(n));
}

Formula disjunction(std::vector<Formula> fs) {
  Node n;
  n.kind = Kind::Or;
  n.children = std::move(fs);
  return make(std::move(n));
}

Formula exists(const std::string& var, Formula body) {
  Node n;
  n.kind = Kind::Exists;
  n.var = var;
  n.children = {std::move(body)};
  return make(std::move(n));
}

Formula forall(const std::string& var, Formula body) {
  Node n;
  n.kind = Kind::Forall;
  n.var = var;
  n.children = {std::move(body)};
  return make(std::move(n));
}

Formula schema(const std::string& name, Ordinal rank, std::vector<std::string> free) {
  Node n;
  n.kind = Kind::Schema;
  n.name = name;
  n.rank = std::move(rank);
  n.free = std::move(free);
  return make(std::move(n));
}

Ordinal qr(const Formula& f) {
  switch (f->kind) {
    case Kind::Equal:
    case Kind::LessEq:
      return Ordinal();
    case Kind::Schema:
      return f->rank;
    case Kind::Exists:
    case Kind::Forall:
      return qr(f->children[0]) + Ordinal(1);
    default: {
      Ordinal best;
      for (const auto& c : f->children) best = std::max(best, qr(c));
      return best;
    }
  }
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  switch (f->kind) {
    case Kind::Equal:
    case Kind::LessEq:
      out.insert(f->lhs.vars.begin(), f->lhs.vars.end());
      out.insert(f->rhs.vars.begin(), f->rhs.vars.end());
      break;
    case Kind::Schema:
      out.insert(f->free.begin(), f->free.end());
      break;
    case Kind::Exists:
    case Kind::Forall:
      out = free_vars(f->children[0]);
      out.erase(f->var);
      break;
    default:
      for (const auto& c : f->children) {
        auto s = free_vars(c);
        out.insert(s.begin(), s.end());
      }
  }
  return out;
}

bool contains_schema(const Formula& f) {
  if (f->kind == Kind::Schema) return true;
  return std::any_of(f->children.begin(), f->children.end(), contains_schema);
}

bool uses_order(const Formula& f) {
  if (f->kind == Kind::LessEq) return true;
  return std::any_of(f->children.begin(), f->children.end(), uses_order);
}

std::size_t FiniteStructure::term_value(const LinearTerm& t, const Assignment& env) const {
  std::size_t acc = zero;
  for (const auto& v : t.vars) {
    auto it = env.find(v);
    if (it == env.end()) throw Error(ErrorCode::InvalidArgument, "unbound variable " + v);
    acc = add[acc][it->second];
  }
  for (unsigned long k = 0; k < t.units; ++k) acc = add[acc][unit];
  return acc;
}

namespace {

bool eval_in(const Formula& f, const FiniteStructure& m, Assignment& env) {
  switch (f->kind) {
    case Kind::Equal:
      return m.term_value(f->lhs, env) == m.term_value(f->rhs, env);
    case Kind::LessEq:
      if (!m.leq) throw Error(ErrorCode::InvalidArgument, "structure has no order; <= is not in its language");
      return (*m.leq)[m.term_value(f->lhs, env)][m.term_value(f->rhs, env)];
    case Kind::Not:
      return !eval_in(f->children[0], m, env);
    case Kind::And:
      for (const auto& c : f->children)
        if (!eval_in(c, m, env)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : f->children)
        if (eval_in(c, m, env)) return true;
      return false;
    case Kind::Exists:
    case Kind::Forall: {
      bool want = f->kind == Kind::Exists;
      std::optional<std::size_t> saved;
      if (auto it = env.find(f->var); it != env.end()) saved = it->second;
      bool result = !want;
      for (std::size_t e = 0; e < m.size; ++e) {
        env[f->var] = e;
        if (eval_in(f->children[0], m, env) == want) {
          result = want;
          break;
        }
      }
      if (saved) env[f->var] = *saved;
      else env.erase(f->var);
      return result;
    }
    case Kind::Schema:
      throw Error(ErrorCode::UnsupportedStructure, "schema " + f->name + " cannot be evaluated");
  }
  return false;
}

}  // namespace

bool eval(const Formula& f, const FiniteStructure& m, const Assignment& env) {
  Assignment copy = env;
  return eval_in(f, m, copy);
}

LinearTerm FormulaGenerator::term(std::mt19937_64& rng) const {
  LinearTerm t;
  std::size_t count = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  for (std::size_t i = 0; i < count; ++i) t.vars.push_back(vars[pick(rng)]);
  t.units = std::uniform_int_distribution<unsigned long>(0, max_units)(rng);
  return t;
}

Formula FormulaGenerator::gen(std::mt19937_64& rng, unsigned budget, unsigned depth) const {
  // Shapes: 0 atom, 1 not, 2 and, 3 or, 4 exists, 5 forall, 6 schema.
  std::vector<int> shapes{0, 0};
  if (depth < 6) {
    shapes.insert(shapes.end(), {1, 2, 3});
    if (budget > 0) shapes.insert(shapes.end(), {4, 4, 5, 5});
  }
  if (allow_schema) shapes.push_back(6);
  int shape = shapes[std::uniform_int_distribution<std::size_t>(0, shapes.size() - 1)(rng)];
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  switch (shape) {
    case 1:
      return negation(gen(rng, budget, depth + 1));
    case 2:
    case 3: {
      std::vector<Formula> kids;
      std::size_t width = std::uniform_int_distribution<std::size_t>(1, std::max(1u, max_width))(rng);
      for (std::size_t i = 0; i < width; ++i) kids.push_back(gen(rng, budget, depth + 1));
      return shape == 2 ? conjunction(std::move(kids)) : disjunction(std::move(kids));
    }
    case 4:
      return exists(vars[pick(rng)], gen(rng, budget - 1, depth + 1));
    case 5:
      return forall(vars[pick(rng)], gen(rng, budget - 1, depth + 1));
    case 6: {
      static const char* names[] = {"Phi", "Psi", "Theta"};
      std::uniform_int_distribution<int> which(0, 3);
      int r = which(rng);
      Ordinal rank = r == 3 ? Ordinal::omega() : Ordinal(r);
      if (std::bernoulli_distribution(0.2)(rng)) rank = Ordinal::omega() + Ordinal(r + 1);
      return schema(names[which(rng) % 3], rank, {vars[pick(rng)]});
    }
    default:
      if (allow_order && std::bernoulli_distribution(0.5)(rng)) return less_eq(term(rng), term(rng));
      return equal(term(rng), term(rng));
  }
}

Formula FormulaGenerator::operator()(std::mt19937_64& rng) const { return gen(rng, max_qr, 0); }

}  // namespace efk::logic
