#include "efk/logic/semigroup.hpp"

#include <algorithm>
#include <numeric>

#include "efk/errors.hpp"
#include "efk/logic/sexpr.hpp"

namespace efk::logic {

void PointedSemigroup::validate() const {
  if (size == 0 || add.size() != size) throw Error(ErrorCode::InvalidArgument, "addition table has the wrong size");
  for (const auto& row : add) {
    if (row.size() != size) throw Error(ErrorCode::InvalidArgument, "addition table has the wrong size");
    for (auto x : row)
      if (x >= size) throw Error(ErrorCode::InvalidArgument, "addition table leaves the carrier");
  }
  if (v >= size) throw Error(ErrorCode::InvalidArgument, "distinguished point outside the carrier");
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      if (add[a][b] != add[b][a]) throw Error(ErrorCode::InvalidArgument, "addition is not commutative");
      for (std::size_t c = 0; c < size; ++c)
        if (add[add[a][b]][c] != add[a][add[b][c]])
          throw Error(ErrorCode::InvalidArgument, "addition is not associative");
    }
  zero();
}

std::size_t PointedSemigroup::zero() const {
  for (std::size_t e = 0; e < size; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < size && ok; ++a) ok = add[e][a] == a;
    if (ok) return e;
  }
  throw Error(ErrorCode::InvalidArgument, "semigroup has no identity element");
}

FiniteStructure PointedSemigroup::structure() const {
  FiniteStructure m;
  m.size = size;
  m.add = add;
  m.zero = zero();
  m.unit = v;
  return m;
}

namespace {
PointedSemigroup tabulate(std::size_t n, std::size_t v, std::size_t (*op)(std::size_t, std::size_t, std::size_t)) {
  PointedSemigroup h;
  h.size = n;
  h.v = v;
  h.add.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) h.add[a][b] = op(a, b, n);
  h.validate();
  return h;
}
}  // namespace

PointedSemigroup PointedSemigroup::cyclic_group(std::size_t n, std::size_t v) {
  return tabulate(n, v, [](std::size_t a, std::size_t b, std::size_t n) { return (a + b) % n; });
}
PointedSemigroup PointedSemigroup::truncated(std::size_t n, std::size_t v) {
  return tabulate(n, v, [](std::size_t a, std::size_t b, std::size_t n) { return std::min(a + b, n - 1); });
}
PointedSemigroup PointedSemigroup::max_semilattice(std::size_t n, std::size_t v) {
  return tabulate(n, v, [](std::size_t a, std::size_t b, std::size_t) { return std::max(a, b); });
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

GrothendieckGroup grothendieck(const PointedSemigroup& h) {
  h.validate();
  const std::size_t n = h.size;
  const auto& add = h.add;
  UnionFind uf(n * n);
  for (std::size_t g0 = 0; g0 < n; ++g0)
    for (std::size_t g1 = 0; g1 < n; ++g1)
      for (std::size_t h0 = 0; h0 < n; ++h0)
        for (std::size_t h1 = 0; h1 < n; ++h1)
          for (std::size_t k = 0; k < n; ++k)
            if (add[add[g0][h1]][k] == add[add[h0][g1]][k]) {
              uf.join(g0 * n + g1, h0 * n + h1);
              break;
            }
  GrothendieckGroup g;
  g.base = h;
  g.class_of_pair.assign(n * n, 0);
  std::vector<std::size_t> root_to_class(n * n, n * n);
  for (std::size_t p = 0; p < n * n; ++p) {
    std::size_t r = uf.find(p);
    if (root_to_class[r] == n * n) {
      root_to_class[r] = g.members.size();
      g.members.emplace_back();
    }
    g.class_of_pair[p] = root_to_class[r];
    g.members[root_to_class[r]].emplace_back(p / n, p % n);
  }
  const std::size_t c = g.members.size();
  const std::size_t z = h.zero();
  FiniteStructure& m = g.structure;
  m.size = c;
  m.add.assign(c, std::vector<std::size_t>(c));
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) {
      auto [a0, a1] = g.members[a].front();
      auto [b0, b1] = g.members[b].front();
      m.add[a][b] = g.class_of(add[a0][b0], add[a1][b1]);
    }
  m.zero = g.class_of(z, z);
  m.unit = g.class_of(h.v, z);
  std::vector<bool> positive(c, false);
  for (std::size_t x = 0; x < n; ++x) positive[g.class_of(x, z)] = true;
  m.leq = std::vector<std::vector<bool>>(c, std::vector<bool>(c, false));
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) {
      // b - a is the class of (b0 + a1, b1 + a0).
      auto [a0, a1] = g.members[a].front();
      auto [b0, b1] = g.members[b].front();
      (*m.leq)[a][b] = positive[g.class_of(add[b0][a1], add[b1][a0])];
    }
  return g;
}

namespace {

void collect_vars(const Formula& f, std::set<std::string>& out) {
  for (const auto* t : {&f->lhs, &f->rhs}) out.insert(t->vars.begin(), t->vars.end());
  if (!f->var.empty()) out.insert(f->var);
  out.insert(f->free.begin(), f->free.end());
  for (const auto& c : f->children) collect_vars(c, out);
}

struct Translator {
  std::size_t fresh = 0;
  std::set<std::string> taken;  // pair components of every variable of phi

  explicit Translator(const Formula& phi) {
    std::set<std::string> vars;
    collect_vars(phi, vars);
    for (const auto& x : vars) {
      taken.insert(part(x, 0));
      taken.insert(part(x, 1));
    }
  }

  // Next witness index whose z.N and w.N clash with no pair component.
  std::size_t next_witness() {
    while (taken.count("z." + std::to_string(fresh)) || taken.count("w." + std::to_string(fresh))) ++fresh;
    return fresh++;
  }

  static std::string part(const std::string& x, int j) { return x + "." + std::to_string(j); }

  // Left side collects the x.0 of lhs and the x.1 of rhs; right side the rest.
  std::pair<LinearTerm, LinearTerm> balance(const Node& atom) const {
    LinearTerm left, right;
    for (const auto& x : atom.lhs.vars) {
      left.vars.push_back(part(x, 0));
      right.vars.push_back(part(x, 1));
    }
    for (const auto& x : atom.rhs.vars) {
      left.vars.push_back(part(x, 1));
      right.vars.push_back(part(x, 0));
    }
    left.units = atom.lhs.units;
    right.units = atom.rhs.units;
    return {left, right};
  }

  Formula go(const Formula& f) {
    switch (f->kind) {
      case Kind::Equal: {
        auto [left, right] = balance(*f);
        std::string z = "z." + std::to_string(next_witness());
        left.vars.push_back(z);
        right.vars.push_back(z);
        return exists(z, equal(left, right));
      }
      case Kind::LessEq: {
        auto [left, right] = balance(*f);
        std::size_t n = next_witness();
        std::string z = "z." + std::to_string(n);
        std::string w = "w." + std::to_string(n);
        left.vars.push_back(z);
        left.vars.push_back(w);
        right.vars.push_back(z);
        return exists(z, exists(w, equal(left, right)));
      }
      case Kind::Not:
        return negation(go(f->children[0]));
      case Kind::And:
      case Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& c : f->children) kids.push_back(go(c));
        return f->kind == Kind::And ? conjunction(std::move(kids)) : disjunction(std::move(kids));
      }
      case Kind::Exists:
        return exists(part(f->var, 0), exists(part(f->var, 1), go(f->children[0])));
      case Kind::Forall:
        return forall(part(f->var, 0), forall(part(f->var, 1), go(f->children[0])));
      case Kind::Schema: {
        std::vector<std::string> free;
        for (const auto& x : f->free) {
          free.push_back(part(x, 0));
          free.push_back(part(x, 1));
        }
        return schema(f->name + "~", Ordinal(2) * f->rank + Ordinal(2), std::move(free));
      }
    }
    throw Error(ErrorCode::Internal, "unknown formula node");
  }
};

}  // namespace

Formula translate_k0_to_v(const Formula& phi) { return Translator(phi).go(phi); }

Ordinal translation_rank_bound(const Formula& phi) { return Ordinal(2) * qr(phi) + Ordinal(2); }

TranslationReport verify_translation(const Formula& phi, const PointedSemigroup& h, std::size_t samples,
                                     std::uint64_t seed) {
  GrothendieckGroup g = grothendieck(h);
  Formula psi = translate_k0_to_v(phi);
  FiniteStructure hs = h.structure();
  const std::set<std::string> free = free_vars(phi);
  std::vector<std::string> vars(free.begin(), free.end());
  std::mt19937_64 rng(seed);
  TranslationReport report;
  double total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= static_cast<double>(g.size());
  report.exhaustive = total <= static_cast<double>(samples);
  std::size_t runs = report.exhaustive ? static_cast<std::size_t>(total) : samples;
  std::vector<std::size_t> tuple(vars.size(), 0);
  for (std::size_t run = 0; run < runs; ++run) {
    if (report.exhaustive) {
      std::size_t code = run;
      for (auto& t : tuple) {
        t = code % g.size();
        code /= g.size();
      }
    } else {
      for (auto& t : tuple) t = std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng);
    }
    Assignment env_g, env_h;
    std::string shown;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      env_g[vars[i]] = tuple[i];
      const auto& mem = g.members[tuple[i]];
      auto [p0, p1] = mem[std::uniform_int_distribution<std::size_t>(0, mem.size() - 1)(rng)];
      env_h[vars[i] + ".0"] = p0;
      env_h[vars[i] + ".1"] = p1;
      shown += " " + vars[i] + "=(" + std::to_string(p0) + "," + std::to_string(p1) + ")";
    }
    bool lhs = eval(phi, g.structure, env_g);
    bool rhs = eval(psi, hs, env_h);
    ++report.checked;
    if (lhs != rhs) {
      ++report.mismatches;
      if (report.details.size() < 5)
        report.details.push_back(to_sexpr(phi) + " at" + shown + ": G(H) says " + (lhs ? "true" : "false"));
    }
  }
  return report;
}

}  // namespace efk::logic
