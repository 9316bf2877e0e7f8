#include "efk/logic/sexpr.hpp"

#include <cctype>

#include "efk/errors.hpp"

namespace efk::logic {

std::string Sexpr::str() const {
  if (is_atom) return atom;
  std::string out = "(";
  for (std::size_t i = 0; i < list.size(); ++i) out += (i ? " " : "") + list[i].str();
  return out + ")";
}

namespace {

struct Reader {
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  Sexpr read() {
    skip();
    if (i >= s.size()) throw ParseError("unexpected end of input", i);
    Sexpr out;
    out.position = i;
    if (s[i] == '(') {
      ++i;
      while (true) {
        skip();
        if (i >= s.size()) throw ParseError("missing ')'", i);
        if (s[i] == ')') {
          ++i;
          return out;
        }
        out.list.push_back(read());
      }
    }
    if (s[i] == ')') throw ParseError("unexpected ')'", i);
    out.is_atom = true;
    if (s[i] == '"') {
      std::size_t close = s.find('"', i + 1);
      if (close == std::string_view::npos) throw ParseError("unterminated string", i);
      out.atom = std::string(s.substr(i + 1, close - i - 1));
      i = close + 1;
      return out;
    }
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')')
      out.atom += s[i++];
    return out;
  }
};

bool is_var_name(const std::string& a) {
  if (a.empty() || a == "u" || std::isdigit(static_cast<unsigned char>(a[0]))) return false;
  for (char c : a)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'')) return false;
  return true;
}

void add_item(LinearTerm& t, const Sexpr& e) {
  if (!e.is_atom) throw ParseError("term items must be atoms", e.position);
  const std::string& a = e.atom;
  if (a == "0") return;
  if (a == "u") {
    ++t.units;
    return;
  }
  if (a.size() > 1 && a.back() == 'u' && std::isdigit(static_cast<unsigned char>(a[0]))) {
    std::string digits = a.substr(0, a.size() - 1);
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad unit multiple " + a, e.position);
    t.units += std::stoul(digits);
    return;
  }
  if (!is_var_name(a)) throw ParseError("bad variable name " + a, e.position);
  t.vars.push_back(a);
}

LinearTerm read_term(const Sexpr& e) {
  LinearTerm t;
  if (e.is_atom) {
    add_item(t, e);
    return t;
  }
  if (e.list.empty() || !e.list[0].is_atom || e.list[0].atom != "+")
    throw ParseError("a compound term must start with +", e.position);
  for (std::size_t k = 1; k < e.list.size(); ++k) add_item(t, e.list[k]);
  return t;
}

Formula read_formula(const Sexpr& e) {
  if (e.is_atom || e.list.empty() || !e.list[0].is_atom) throw ParseError("expected a formula", e.position);
  const std::string& head = e.list[0].atom;
  auto arity = [&](std::size_t n) {
    if (e.list.size() != n + 1) throw ParseError(head + " expects " + std::to_string(n) + " arguments", e.position);
  };
  if (head == "=" || head == "<=") {
    arity(2);
    LinearTerm l = read_term(e.list[1]), r = read_term(e.list[2]);
    return head == "=" ? equal(l, r) : less_eq(l, r);
  }
  if (head == "not") {
    arity(1);
    return negation(read_formula(e.list[1]));
  }
  if (head == "and" || head == "or") {
    std::vector<Formula> kids;
    for (std::size_t k = 1; k < e.list.size(); ++k) kids.push_back(read_formula(e.list[k]));
    return head == "and" ? conjunction(std::move(kids)) : disjunction(std::move(kids));
  }
  if (head == "exists" || head == "forall") {
    arity(2);
    std::vector<std::string> vars;
    const Sexpr& vs = e.list[1];
    if (vs.is_atom) vars.push_back(vs.atom);
    else
      for (const auto& v : vs.list) {
        if (!v.is_atom) throw ParseError("bound variables must be atoms", v.position);
        vars.push_back(v.atom);
      }
    if (vars.empty()) throw ParseError("quantifier binds no variable", vs.position);
    for (const auto& v : vars)
      if (!is_var_name(v)) throw ParseError("bad variable name " + v, vs.position);
    Formula body = read_formula(e.list[2]);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = head == "exists" ? exists(*it, body) : forall(*it, body);
    return body;
  }
  if (head == "schema") {
    if (e.list.size() < 3 || !e.list[1].is_atom || !e.list[2].is_atom)
      throw ParseError("schema expects a name and a rank", e.position);
    std::vector<std::string> free;
    for (std::size_t k = 3; k < e.list.size(); ++k) {
      if (!e.list[k].is_atom || !is_var_name(e.list[k].atom)) throw ParseError("bad schema variable", e.list[k].position);
      free.push_back(e.list[k].atom);
    }
    Ordinal rank;
    try {
      rank = Ordinal::parse(e.list[2].atom);
    } catch (const Error& err) {
      throw ParseError(std::string("bad schema rank: ") + err.what(), e.list[2].position);
    }
    return schema(e.list[1].atom, rank, std::move(free));
  }
  throw ParseError("unknown connective " + head, e.position);
}

}  // namespace

Sexpr parse_sexpr(std::string_view text) {
  Reader r{text};
  Sexpr out = r.read();
  r.skip();
  if (r.i != text.size()) throw ParseError("trailing input", r.i);
  return out;
}

Formula parse_formula(std::string_view text) { return read_formula(parse_sexpr(text)); }

std::string term_str(const LinearTerm& t) {
  std::vector<std::string> items = t.vars;
  if (t.units == 1) items.push_back("u");
  else if (t.units > 1) items.push_back(std::to_string(t.units) + "u");
  if (items.empty()) return "0";
  if (items.size() == 1) return items[0];
  std::string out = "(+";
  for (const auto& s : items) out += " " + s;
  return out + ")";
}

std::string to_sexpr(const Formula& f) {
  switch (f->kind) {
    case Kind::Equal:
      return "(= " + term_str(f->lhs) + " " + term_str(f->rhs) + ")";
    case Kind::LessEq:
      return "(<= " + term_str(f->lhs) + " " + term_str(f->rhs) + ")";
    case Kind::Not:
      return "(not " + to_sexpr(f->children[0]) + ")";
    case Kind::And:
    case Kind::Or: {
      std::string out = f->kind == Kind::And ? "(and" : "(or";
      for (const auto& c : f->children) out += " " + to_sexpr(c);
      return out + ")";
    }
    case Kind::Exists:
    case Kind::Forall:
      return std::string(f->kind == Kind::Exists ? "(exists " : "(forall ") + f->var + " " + to_sexpr(f->children[0]) + ")";
    case Kind::Schema: {
      std::string rank = f->rank.str();
      if (rank.find_first_of("() ") != std::string::npos) rank = "\"" + rank + "\"";
      std::string out = "(schema " + f->name + " " + rank;
      for (const auto& x : f->free) out += " " + x;
      return out + ")";
    }
  }
  return "";
}

}  // namespace efk::logic
