#include "efk/logic/continuous.hpp"

#include <algorithm>
#include <map>

#include "efk/errors.hpp"

namespace efk::logic {

StarPolynomial StarPolynomial::var(const std::string& name, bool star) {
  return StarPolynomial{{Monomial{Gaussian(1), {Letter{name, star, false}}}}};
}
StarPolynomial StarPolynomial::constant_c() { return StarPolynomial{{Monomial{Gaussian(1), {Letter{"c", false, true}}}}}; }
StarPolynomial StarPolynomial::scalar(const Gaussian& g) { return StarPolynomial{{Monomial{g, {}}}}; }

StarPolynomial StarPolynomial::adjoint() const {
  StarPolynomial out;
  for (const auto& m : terms) {
    Monomial a{m.coeff.conj(), {}};
    for (auto it = m.letters.rbegin(); it != m.letters.rend(); ++it) {
      Letter l = *it;
      // c names a projection, so c* = c.
      if (!l.constant) l.star = !l.star;
      a.letters.push_back(l);
    }
    out.terms.push_back(std::move(a));
  }
  return out;
}

std::set<std::string> StarPolynomial::vars() const {
  std::set<std::string> out;
  for (const auto& m : terms)
    for (const auto& l : m.letters)
      if (!l.constant) out.insert(l.name);
  return out;
}

StarPolynomial StarPolynomial::simplified() const {
  std::map<std::vector<Letter>, Gaussian> acc;
  std::vector<std::vector<Letter>> order;
  for (const auto& m : terms) {
    auto [it, fresh] = acc.emplace(m.letters, Gaussian(0));
    if (fresh) order.push_back(m.letters);
    it->second = it->second + m.coeff;
  }
  StarPolynomial out;
  for (const auto& w : order) {
    const Gaussian& c = acc[w];
    if (!(c == Gaussian(0))) out.terms.push_back(Monomial{c, w});
  }
  return out;
}

StarPolynomial StarPolynomial::substitute(const std::vector<std::string>& names,
                                          const std::vector<StarPolynomial>& args) const {
  StarPolynomial out;
  for (const auto& m : terms) {
    StarPolynomial prod = scalar(m.coeff);
    for (const auto& l : m.letters) {
      auto it = std::find(names.begin(), names.end(), l.name);
      StarPolynomial piece;
      if (l.constant || it == names.end()) piece = StarPolynomial{{Monomial{Gaussian(1), {l}}}};
      else {
        const StarPolynomial& a = args[static_cast<std::size_t>(it - names.begin())];
        piece = l.star ? a.adjoint() : a;
      }
      prod = prod * piece;
    }
    out = out + prod;
  }
  return out.simplified();
}

std::string StarPolynomial::str() const {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Monomial& m = terms[i];
    std::string word;
    for (std::size_t k = 0; k < m.letters.size(); ++k)
      word += (k ? " " : "") + m.letters[k].name + (m.letters[k].star ? "*" : "");
    Gaussian c = m.coeff;
    bool negative = c.im == 0 && c.re < 0;
    if (negative) c = Gaussian(-c.re);
    std::string coeff;
    if (word.empty()) coeff = c.str();
    else if (!(c == Gaussian(1))) coeff = (c.im == 0 ? c.str() : "(" + c.str() + ")") + " ";
    if (i == 0) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += coeff + word;
  }
  return out;
}

StarPolynomial operator+(const StarPolynomial& a, const StarPolynomial& b) {
  StarPolynomial out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out.simplified();
}
StarPolynomial operator-(const StarPolynomial& a, const StarPolynomial& b) { return a + Gaussian(-1) * b; }
StarPolynomial operator*(const StarPolynomial& a, const StarPolynomial& b) {
  StarPolynomial out;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) {
      Monomial m{x.coeff * y.coeff, x.letters};
      m.letters.insert(m.letters.end(), y.letters.begin(), y.letters.end());
      out.terms.push_back(std::move(m));
    }
  return out.simplified();
}
StarPolynomial operator*(const Gaussian& s, const StarPolynomial& a) {
  StarPolynomial out = a;
  for (auto& m : out.terms) m.coeff = s * m.coeff;
  return out.simplified();
}

bool Range::within(const Range& outer) const {
  if (lo < outer.lo) return false;
  if (!outer.hi) return true;
  return hi && *hi <= *outer.hi;
}

std::string Range::str() const { return "[" + to_string(lo) + ", " + (hi ? to_string(*hi) : std::string("inf")) + "]"; }

namespace {

// |re| + |im| bounds the modulus of a Gaussian rational from above.
Rational modulus_bound(const Gaussian& g) { return abs_of(g.re) + abs_of(g.im); }

Rational poly_norm_bound(const StarPolynomial& p) {
  Rational total = 0;
  for (const auto& m : p.terms) total += modulus_bound(m.coeff);
  return total;
}

Rational poly_lipschitz(const StarPolynomial& p, const std::set<std::string>& vars) {
  Rational total = 0;
  for (const auto& m : p.terms) {
    long hits = 0;
    for (const auto& l : m.letters)
      if (!l.constant && vars.count(l.name)) ++hits;
    total += modulus_bound(m.coeff) * hits;
  }
  return total;
}

std::optional<Rational> add_hi(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

CFormula finish(CNode n) {
  n.lipschitz = 0;
  auto out = std::make_shared<CNode>(std::move(n));
  out->lipschitz = lipschitz_in(out, free_vars(out));
  return out;
}

void check_family(const CNode& n) {
  if (!n.family) return;
  for (const auto& c : n.children) {
    if (c->lipschitz > n.family->lipschitz)
      throw Error(ErrorCode::InvalidArgument, "family member exceeds the declared Lipschitz bound");
    if (!c->range.within(n.family->range))
      throw Error(ErrorCode::InvalidArgument, "family member leaves the declared range " + n.family->range.str());
  }
}

CFormula lattice(CKind kind, std::vector<CFormula> kids, std::optional<FamilyBound> family) {
  if (kids.empty()) throw Error(ErrorCode::InvalidArgument, "max/min of no formulas");
  CNode n;
  n.kind = kind;
  n.children = std::move(kids);
  n.family = std::move(family);
  check_family(n);
  n.rank = Ordinal();
  bool is_max = kind == CKind::Max;
  n.range = n.children[0]->range;
  for (const auto& c : n.children) {
    n.rank = std::max(n.rank, c->rank);
    n.range.lo = is_max ? std::max(n.range.lo, c->range.lo) : std::min(n.range.lo, c->range.lo);
    if (is_max) n.range.hi = (n.range.hi && c->range.hi) ? std::optional(std::max(*n.range.hi, *c->range.hi)) : std::nullopt;
    else if (!n.range.hi) n.range.hi = c->range.hi;
    else if (c->range.hi) n.range.hi = std::min(*n.range.hi, *c->range.hi);
  }
  if (n.family) n.range = n.family->range;
  return finish(std::move(n));
}

CFormula quantifier(CKind kind, std::vector<std::string> block, CFormula body) {
  if (block.empty()) throw Error(ErrorCode::InvalidArgument, "quantifier block is empty");
  CNode n;
  n.kind = kind;
  n.rank = body->rank + Ordinal(static_cast<long long>(block.size()));
  n.range = body->range;
  n.block = std::move(block);
  n.children = {std::move(body)};
  return finish(std::move(n));
}

}  // namespace

CFormula c_norm(StarPolynomial p) {
  CNode n;
  n.kind = CKind::Norm;
  n.poly = p.simplified();
  n.range = Range{0, poly_norm_bound(n.poly)};
  return finish(std::move(n));
}

CFormula c_const(Rational q) {
  CNode n;
  n.kind = CKind::Const;
  n.value = q;
  n.range = Range{q, q};
  return finish(std::move(n));
}

CFormula c_max(std::vector<CFormula> kids, std::optional<FamilyBound> family) {
  return lattice(CKind::Max, std::move(kids), std::move(family));
}
CFormula c_min(std::vector<CFormula> kids, std::optional<FamilyBound> family) {
  return lattice(CKind::Min, std::move(kids), std::move(family));
}

CFormula c_dotminus(CFormula a, CFormula b) {
  CNode n;
  n.kind = CKind::DotMinus;
  n.rank = std::max(a->rank, b->rank);
  Rational lo = a->range.lo - (b->range.hi ? *b->range.hi : a->range.lo);
  n.range.lo = b->range.hi ? std::max(Rational(0), lo) : Rational(0);
  if (a->range.hi) n.range.hi = std::max(Rational(0), Rational(*a->range.hi - b->range.lo));
  n.children = {std::move(a), std::move(b)};
  return finish(std::move(n));
}

CFormula c_affine(std::vector<Rational> weights, std::vector<CFormula> kids, Rational shift) {
  if (weights.size() != kids.size() || kids.empty())
    throw Error(ErrorCode::InvalidArgument, "affine combination needs one weight per formula");
  CNode n;
  n.kind = CKind::Affine;
  n.value = shift;
  n.range = Range{shift, shift};
  for (std::size_t i = 0; i < kids.size(); ++i) {
    n.rank = std::max(n.rank, kids[i]->rank);
    const Range& r = kids[i]->range;
    const Rational& w = weights[i];
    if (w >= 0) {
      n.range.lo += w * r.lo;
      n.range.hi = w == 0 ? n.range.hi : add_hi(n.range.hi, r.hi ? std::optional(w * *r.hi) : std::nullopt);
    } else {
      if (!r.hi) throw Error(ErrorCode::InvalidArgument, "negative weight on an unbounded formula");
      n.range.lo += w * *r.hi;
      n.range.hi = add_hi(n.range.hi, std::optional(w * r.lo));
    }
  }
  n.weights = std::move(weights);
  n.children = std::move(kids);
  return finish(std::move(n));
}

CFormula c_inf(std::vector<std::string> block, CFormula body) { return quantifier(CKind::Inf, std::move(block), std::move(body)); }
CFormula c_sup(std::vector<std::string> block, CFormula body) { return quantifier(CKind::Sup, std::move(block), std::move(body)); }

CFormula c_phi(unsigned n, Rational delta, std::vector<StarPolynomial> args) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "phi needs n >= 1");
  if (delta <= 0) throw Error(ErrorCode::InvalidArgument, "phi needs delta > 0");
  if (args.size() != n) throw Error(ErrorCode::InvalidArgument, "phi needs exactly n arguments");
  CNode node;
  node.kind = CKind::Phi;
  node.n = n;
  node.delta = delta;
  Rational reach = 0;
  for (auto& a : args) {
    a = a.simplified();
    reach += poly_norm_bound(a);
  }
  node.args = std::move(args);
  node.range = Range{0, reach * reach + reach};
  return finish(std::move(node));
}

CFormula c_schema(const std::string& name, Ordinal rank, Rational lipschitz, Range range, std::vector<std::string> free) {
  CNode n;
  n.kind = CKind::Schema;
  n.name = name;
  n.rank = std::move(rank);
  n.range = std::move(range);
  n.free = std::move(free);
  n.value = std::move(lipschitz);  // declared modulus
  return finish(std::move(n));
}

std::set<std::string> free_vars(const CFormula& f) {
  std::set<std::string> out;
  switch (f->kind) {
    case CKind::Norm:
      return f->poly.vars();
    case CKind::Phi:
      for (const auto& a : f->args) {
        auto v = a.vars();
        out.insert(v.begin(), v.end());
      }
      return out;
    case CKind::Schema:
      return {f->free.begin(), f->free.end()};
    case CKind::Inf:
    case CKind::Sup:
      out = free_vars(f->children[0]);
      for (const auto& v : f->block) out.erase(v);
      return out;
    default:
      for (const auto& c : f->children) {
        auto v = free_vars(c);
        out.insert(v.begin(), v.end());
      }
      return out;
  }
}

Rational lipschitz_in(const CFormula& f, const std::set<std::string>& vars) {
  switch (f->kind) {
    case CKind::Norm:
      return poly_lipschitz(f->poly, vars);
    case CKind::Const:
      return 0;
    case CKind::Max:
    case CKind::Min: {
      Rational best = 0;
      for (const auto& c : f->children) best = std::max(best, lipschitz_in(c, vars));
      return best;
    }
    case CKind::DotMinus:
      return lipschitz_in(f->children[0], vars) + lipschitz_in(f->children[1], vars);
    case CKind::Affine: {
      Rational total = 0;
      for (std::size_t i = 0; i < f->children.size(); ++i) total += abs_of(f->weights[i]) * lipschitz_in(f->children[i], vars);
      return total;
    }
    case CKind::Inf:
    case CKind::Sup: {
      std::set<std::string> outer = vars;
      for (const auto& v : f->block) outer.erase(v);
      return lipschitz_in(f->children[0], outer);
    }
    case CKind::Phi: {
      Rational reach = 0, slope = 0;
      for (const auto& a : f->args) {
        reach += poly_norm_bound(a);
        slope += poly_lipschitz(a, vars);
      }
      if (slope == 0) return 0;
      return 2 * reach * slope + slope;
    }
    case CKind::Schema: {
      for (const auto& v : f->free)
        if (vars.count(v)) return f->value;
      return 0;
    }
  }
  return 0;
}

Ordinal qr(const CFormula& f) { return f->rank; }

std::size_t count_nodes(const CFormula& f, CKind kind) {
  std::size_t total = f->kind == kind ? 1 : 0;
  for (const auto& c : f->children) total += count_nodes(c, kind);
  return total;
}

std::vector<Gaussian> disc_grid(unsigned n, const Rational& delta) {
  if (delta <= 0) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  Rational scale = Rational(2 * static_cast<long>(n)) / delta;
  Integer big = floor_of(scale);
  if (Rational(big) < scale) big += 1;
  if (!big.fits_slong_p() || big > 10000) throw Error(ErrorCode::SearchLimit, "grid too fine");
  long N = big.get_si();
  std::vector<Gaussian> out;
  for (long p = -N; p <= N; ++p)
    for (long q = -N; q <= N; ++q)
      if (p * p + q * q <= N * N) out.emplace_back(Rational(p, N), Rational(q, N));
  for (auto& g : out) {
    g.re.canonicalize();
    g.im.canonicalize();
  }
  return out;
}

std::vector<Vec> phi_net(unsigned n, const Rational& delta, std::size_t cap) {
  std::vector<Gaussian> grid = disc_grid(n, delta);
  double count = 1;
  for (unsigned i = 0; i < n; ++i) count *= static_cast<double>(grid.size());
  if (count > static_cast<double>(cap)) throw Error(ErrorCode::SearchLimit, "net is larger than the cap");
  std::vector<Vec> out{Vec{}};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto& prefix : out)
      for (const auto& g : grid) {
        Vec v = prefix;
        v.push_back(g);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

namespace {

std::vector<std::string> phi_names(unsigned n) {
  std::vector<std::string> names;
  for (unsigned i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

CFormula phi_over(unsigned n, const Rational& delta, const std::vector<StarPolynomial>& xs, const PhiOptions& options) {
  double j = 1;
  std::vector<Gaussian> grid = disc_grid(n, delta);
  for (unsigned i = 0; i < n; ++i) j *= static_cast<double>(grid.size());
  if (j * j + j > static_cast<double>(options.max_operands))
    throw Error(ErrorCode::SearchLimit, "phi would need more than " + std::to_string(options.max_operands) + " operands");
  std::vector<Vec> net = phi_net(n, delta, options.max_operands);
  std::vector<StarPolynomial> linear;
  for (const auto& b : net) {
    StarPolynomial p;
    for (unsigned i = 0; i < n; ++i) p = p + b[i] * xs[i];
    linear.push_back(p);
  }
  std::vector<CFormula> operands;
  for (std::size_t h0 = 0; h0 < net.size(); ++h0)
    for (std::size_t h1 = 0; h1 < net.size(); ++h1) {
      StarPolynomial diag;
      for (unsigned i = 0; i < n; ++i) diag = diag + (net[h0][i] * net[h1][i]) * xs[i];
      operands.push_back(c_norm(linear[h0] * linear[h1] - diag));
    }
  for (std::size_t h = 0; h < net.size(); ++h) operands.push_back(c_dotminus(c_norm(linear[h]), c_const(1)));
  return c_max(std::move(operands));
}

}  // namespace

CFormula build_phi_n_delta(unsigned n, const Rational& delta, const PhiOptions& options) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (delta <= 0) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  std::vector<StarPolynomial> xs;
  for (const auto& name : phi_names(n)) xs.push_back(StarPolynomial::var(name));
  return phi_over(n, delta, xs, options);
}

CFormula expand_phi(const CNode& phi, const PhiOptions& options) {
  if (phi.kind != CKind::Phi) throw Error(ErrorCode::InvalidArgument, "not a phi node");
  return phi_over(phi.n, phi.delta, phi.args, options);
}

namespace {

// Bound names carry `tag` so separate atoms never share variables.
CFormula atomic_formula(const std::vector<std::string>& zs, const std::vector<std::string>& ws, unsigned m0,
                        unsigned m1, const Rational& delta, const std::string& tag) {
  using P = StarPolynomial;
  const std::size_t left = zs.size() + m0, right = ws.size() + m1;
  if (left + right == 0) return c_const(0);
  auto bound = [&](const char* base, std::size_t i) {
    return std::string(base) + tag + (tag.empty() ? "" : "_") + std::to_string(i);
  };
  std::string v = "v" + tag;
  std::vector<std::string> vs, us;
  for (std::size_t i = 0; i < left; ++i) vs.push_back(bound("v", i));
  for (std::size_t j = 0; j < right; ++j) us.push_back(bound("u", j));
  auto pv = [](const std::string& x, bool star = false) { return P::var(x, star); };
  std::vector<CFormula> ops;
  for (std::size_t i = 0; i < zs.size(); ++i) ops.push_back(c_norm(pv(vs[i], true) * pv(vs[i]) - pv(zs[i])));
  for (std::size_t j = 0; j < ws.size(); ++j) ops.push_back(c_norm(pv(us[j], true) * pv(us[j]) - pv(ws[j])));
  for (std::size_t i = zs.size(); i < left; ++i) ops.push_back(c_norm(pv(vs[i], true) * pv(vs[i]) - P::constant_c()));
  for (std::size_t j = ws.size(); j < right; ++j) ops.push_back(c_norm(pv(us[j], true) * pv(us[j]) - P::constant_c()));
  P range_left, range_right;
  for (const auto& x : vs) range_left = range_left + pv(x) * pv(x, true);
  for (const auto& y : us) range_right = range_right + pv(y) * pv(y, true);
  ops.push_back(c_norm(pv(v) * pv(v, true) - range_left));
  ops.push_back(c_norm(pv(v, true) * pv(v) - range_right));
  std::vector<P> args;
  for (const auto& x : vs) args.push_back(pv(x) * pv(x, true));
  for (const auto& y : us) args.push_back(pv(y) * pv(y, true));
  ops.push_back(c_phi(static_cast<unsigned>(left + right), delta, std::move(args)));
  CFormula body = c_max(std::move(ops));
  if (!us.empty()) body = c_inf(us, body);
  if (!vs.empty()) body = c_inf(vs, body);
  return c_inf({v}, body);
}

struct CstarTranslator {
  CstarOptions opt;
  std::size_t fresh = 0;

  CFormula neg(CFormula f) const { return c_dotminus(c_const(opt.delta), std::move(f)); }

  CFormula conj(const std::vector<CFormula>& kids) const {
    std::vector<CFormula> capped;
    for (const auto& k : kids) capped.push_back(c_min({k, c_const(opt.cap)}));
    return c_max(std::move(capped), FamilyBound{1, Range{0, opt.cap}});
  }

  CFormula ex(const std::string& y, CFormula body) const {
    using P = StarPolynomial;
    CFormula penalty = c_max({c_norm(P::var(y) - P::var(y, true)), c_norm(P::var(y) - P::var(y) * P::var(y))});
    return c_inf({y}, c_affine({1, 3}, {std::move(body), penalty}));
  }

  CFormula go(const Formula& f) {
    switch (f->kind) {
      case Kind::Equal: {
        std::string tag = "." + std::to_string(fresh++);
        return atomic_formula(f->lhs.vars, f->rhs.vars, static_cast<unsigned>(f->lhs.units),
                              static_cast<unsigned>(f->rhs.units), opt.delta, tag);
      }
      case Kind::LessEq:
        throw Error(ErrorCode::InvalidArgument, "<= is not in the language of V");
      case Kind::Not:
        return neg(go(f->children[0]));
      case Kind::And: {
        std::vector<CFormula> kids;
        for (const auto& c : f->children) kids.push_back(go(c));
        return conj(kids);
      }
      case Kind::Or: {
        std::vector<CFormula> kids;
        for (const auto& c : f->children) kids.push_back(neg(go(c)));
        return neg(conj(kids));
      }
      case Kind::Exists:
        return ex(f->var, go(f->children[0]));
      case Kind::Forall:
        return neg(ex(f->var, neg(go(f->children[0]))));
      case Kind::Schema:
        return c_schema(f->name + "^", Ordinal::omega() + f->rank, 1, Range{0, opt.cap}, f->free);
    }
    throw Error(ErrorCode::Internal, "unknown formula node");
  }
};

}  // namespace

CFormula translate_v_atomic(unsigned n0, unsigned n1, unsigned m0, unsigned m1, const Rational& delta) {
  std::vector<std::string> zs, ws;
  for (unsigned i = 0; i < n0; ++i) zs.push_back("z" + std::to_string(i));
  for (unsigned j = 0; j < n1; ++j) ws.push_back("w" + std::to_string(j));
  return atomic_formula(zs, ws, m0, m1, delta, "");
}

CFormula translate_v_to_cstar(const Formula& phi, const CstarOptions& options) {
  if (options.delta <= 0 || options.cap <= options.delta)
    throw Error(ErrorCode::InvalidArgument, "need 0 < delta < M");
  return CstarTranslator{options}.go(phi);
}

std::string to_sexpr(const CFormula& f) {
  auto join = [](const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + xs[i];
    return out;
  };
  auto kids = [&](const char* head) {
    std::string out = std::string("(") + head;
    for (const auto& c : f->children) out += " " + to_sexpr(c);
    return out + ")";
  };
  switch (f->kind) {
    case CKind::Norm:
      return "(norm \"" + f->poly.str() + "\")";
    case CKind::Const:
      return to_string(f->value);
    case CKind::Max:
      return kids(f->family ? "sup-family" : "max");
    case CKind::Min:
      return kids(f->family ? "inf-family" : "min");
    case CKind::DotMinus:
      return kids("dotminus");
    case CKind::Affine: {
      std::string out = "(affine " + to_string(f->value);
      for (std::size_t i = 0; i < f->children.size(); ++i) out += " (* " + to_string(f->weights[i]) + " " + to_sexpr(f->children[i]) + ")";
      return out + ")";
    }
    case CKind::Inf:
    case CKind::Sup:
      return std::string(f->kind == CKind::Inf ? "(inf (" : "(sup (") + join(f->block) + ") " + to_sexpr(f->children[0]) + ")";
    case CKind::Phi: {
      std::string out = "(phi " + std::to_string(f->n) + " " + to_string(f->delta);
      for (const auto& a : f->args) out += " \"" + a.str() + "\"";
      return out + ")";
    }
    case CKind::Schema:
      return "(schema " + f->name + " \"" + f->rank.str() + "\"" + (f->free.empty() ? "" : " " + join(f->free)) + ")";
  }
  return "";
}

Rational stability_delta_prime(const Rational& delta) {
  if (delta <= 0) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  return 5 * delta + 4 * delta * delta;
}

Rational perturbation_delta(const Rational& eps, unsigned long n) {
  if (eps <= 0 || n == 0) throw Error(ErrorCode::InvalidArgument, "eps and n must be positive");
  Rational out = eps / Rational(static_cast<long>(n * n));
  out.canonicalize();
  return out;
}

}  // namespace efk::logic
