#include "efk/ordinal.hpp"

#include <cctype>
#include <functional>

#include "efk/errors.hpp"

namespace efk {
namespace {

const std::shared_ptr<const Ordinal>& zero_exponent() {
  static const auto zero = std::make_shared<const Ordinal>();
  return zero;
}

const std::shared_ptr<const Ordinal>& one_exponent() {
  static const auto one = std::make_shared<const Ordinal>(1);
  return one;
}

Cmp flip(Cmp c) { return c == Cmp::LT ? Cmp::GT : c == Cmp::GT ? Cmp::LT : Cmp::EQ; }

template <class T>
Cmp cmp_values(const T& a, const T& b) {
  return a < b ? Cmp::LT : b < a ? Cmp::GT : Cmp::EQ;
}

Cmp cmp_ord(const Ordinal& a, const Ordinal& b);

// e_k against an arbitrary ordinal e.
Cmp cmp_eps_ord(int k, const Ordinal& e) {
  if (e.is_zero()) return Cmp::GT;
  const OrdinalTerm& lead = e.terms().front();
  bool exactly_lead = lead.coefficient == 1 && e.terms().size() == 1;
  if (lead.is_epsilon()) {
    if (lead.epsilon != k) return cmp_values(k, lead.epsilon);
    return exactly_lead ? Cmp::EQ : Cmp::LT;
  }
  Cmp r = cmp_eps_ord(k, *lead.exponent);
  if (r != Cmp::EQ) return r;
  return exactly_lead ? Cmp::EQ : Cmp::LT;
}

Cmp cmp_exponent(const OrdinalTerm& x, const OrdinalTerm& y) {
  if (x.is_epsilon() && y.is_epsilon()) return cmp_values(x.epsilon, y.epsilon);
  if (x.is_epsilon()) return cmp_eps_ord(x.epsilon, *y.exponent);
  if (y.is_epsilon()) return flip(cmp_eps_ord(y.epsilon, *x.exponent));
  if (x.exponent == y.exponent) return Cmp::EQ;
  return cmp_ord(*x.exponent, *y.exponent);
}

Cmp cmp_ord(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    Cmp e = cmp_exponent(ta[i], tb[i]);
    if (e != Cmp::EQ) return e;
    Cmp c = cmp_values(ta[i].coefficient, tb[i].coefficient);
    if (c != Cmp::EQ) return c;
  }
  return cmp_values(ta.size(), tb.size());
}

Ordinal exponent_of(const OrdinalTerm& t) {
  return t.is_epsilon() ? Ordinal::epsilon(t.epsilon) : *t.exponent;
}

// omega^e * c in normalized form.
OrdinalTerm make_term(const Ordinal& e, const Integer& c) {
  OrdinalTerm t;
  t.coefficient = c;
  const auto& et = e.terms();
  if (et.size() == 1 && et[0].is_epsilon() && et[0].coefficient == 1) {
    t.epsilon = et[0].epsilon;
  } else if (e.is_zero()) {
    t.exponent = zero_exponent();
  } else if (e == Ordinal(1)) {
    t.exponent = one_exponent();
  } else {
    t.exponent = std::make_shared<const Ordinal>(e);
  }
  return t;
}

bool is_finite_term(const OrdinalTerm& t) { return !t.is_epsilon() && t.exponent->is_zero(); }

class Parser {
 public:
  Parser(std::string_view text, const OrdinalLimits& limits) : s_(text), limits_(limits) {}

  Ordinal run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty ordinal notation", pos_);
    Ordinal r = expr(true);
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  Integer nat() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a natural number", start);
    return Integer(std::string(s_.substr(start, pos_ - start)), 10);
  }
  Integer coefficient() {
    if (!eat('*')) return 1;
    std::size_t at = pos_;
    Integer c = nat();
    if (c == 0) throw ParseError("coefficient 0 is not normalizable", at);
    return c;
  }
  Ordinal expr(bool top) {
    std::size_t start = pos_;
    Ordinal sum;
    int count = 0;
    bool saw_zero = false;
    do {
      std::size_t at = pos_;
      Ordinal t = term();
      if (t.is_zero()) {
        saw_zero = true;
        if (!top) throw ParseError("zero summand inside an exponent is not normalizable", at);
      }
      sum = sum + t;
      ++count;
    } while (eat('+'));
    if (saw_zero && count > 1) throw ParseError("zero summand is not normalizable", start);
    return sum;
  }
  Ordinal term() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("expected a term", pos_);
    char c = s_[pos_];
    if (c == 'w' || eat_word("\xCF\x89")) {  // 'w' or UTF-8 omega
      if (c == 'w') ++pos_;
      Ordinal exponent = 1;
      if (eat('^')) {
        if (eat('(')) {
          exponent = expr(false);
          if (!eat(')')) throw ParseError("expected ')'", pos_);
        } else {
          skip();
          if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t at = pos_;
            exponent = Ordinal::finite(nat());
            if (exponent.is_zero()) throw ParseError("exponent 0 must be written as 1", at);
          } else if (eat('w')) {
            exponent = Ordinal::omega();
          } else {
            throw ParseError("expected '(' after '^'", pos_);
          }
        }
      }
      Integer k = coefficient();
      return Ordinal::from_terms({make_term(exponent, k)});
    }
    if (c == 'e') {
      ++pos_;
      std::size_t at = pos_;
      Integer k = nat();
      if (k > limits_.max_epsilon)
        throw ParseError("epsilon index exceeds supported maximum " + std::to_string(limits_.max_epsilon), at);
      Integer m = coefficient();
      OrdinalTerm t;
      t.epsilon = static_cast<int>(k.get_si());
      t.coefficient = m;
      return Ordinal::from_terms({t});
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Ordinal::finite(nat());
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view s_;
  OrdinalLimits limits_;
  std::size_t pos_ = 0;
};

std::string format(const Ordinal& a, bool unicode);

std::string format_term(const OrdinalTerm& t, bool unicode) {
  const std::string coeff = t.coefficient.get_str();
  const std::string times = unicode ? "\xC2\xB7" : "*";
  const std::string w = unicode ? "\xCF\x89" : "w";
  if (t.is_epsilon()) {
    std::string base = unicode ? "\xCE\xB5_" + std::to_string(t.epsilon) : "e" + std::to_string(t.epsilon);
    if (t.coefficient == 1) return base;
    if (unicode) return base + times + coeff;
    return "w^(" + base + ")*" + coeff;
  }
  if (t.exponent->is_zero()) return coeff;
  std::string s = w;
  if (*t.exponent != Ordinal(1)) {
    const Ordinal& x = *t.exponent;
    bool simple = x.terms().size() == 1 && x.terms()[0].coefficient == 1 &&
                  (x.terms()[0].is_epsilon() || x.terms()[0].exponent->is_zero() || *x.terms()[0].exponent == Ordinal(1));
    simple = simple || x.is_finite();
    std::string inner = format(x, unicode);
    s += (unicode && simple) ? "^" + inner : "^(" + inner + ")";
  }
  if (t.coefficient != 1) s += times + coeff;
  return s;
}

std::string format(const Ordinal& a, bool unicode) {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.terms().size(); ++i) {
    if (i) s += "+";
    s += format_term(a.terms()[i], unicode);
  }
  return s;
}

}  // namespace

Ordinal::Ordinal(long long n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative ordinal");
  if (n > 0) terms_.push_back(OrdinalTerm{zero_exponent(), -1, Integer(static_cast<signed long>(n))});
}

Ordinal Ordinal::finite(const Integer& n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative ordinal");
  Ordinal r;
  if (n > 0) r.terms_.push_back(OrdinalTerm{zero_exponent(), -1, n});
  return r;
}

Ordinal Ordinal::omega() {
  Ordinal r;
  r.terms_.push_back(OrdinalTerm{one_exponent(), -1, 1});
  return r;
}

Ordinal Ordinal::epsilon(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative epsilon index");
  Ordinal r;
  r.terms_.push_back(OrdinalTerm{nullptr, k, 1});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  Ordinal r;
  for (auto& t : terms) {
    if (t.coefficient <= 0) throw Error(ErrorCode::InvalidArgument, "ordinal coefficients must be positive");
    if (!t.is_epsilon() && !t.exponent) throw Error(ErrorCode::InvalidArgument, "term without exponent");
    OrdinalTerm n = std::move(t);
    if (!n.is_epsilon()) {
      const auto& et = n.exponent->terms();
      if (et.size() == 1 && et[0].is_epsilon() && et[0].coefficient == 1) n = make_term(*n.exponent, n.coefficient);
    }
    if (!r.terms_.empty() && cmp_exponent(r.terms_.back(), n) != Cmp::GT)
      throw Error(ErrorCode::InvalidArgument, "CNF exponents must strictly decrease");
    r.terms_.push_back(std::move(n));
  }
  return r;
}

Ordinal Ordinal::parse(std::string_view text, const OrdinalLimits& limits) {
  return Parser(text, limits).run();
}

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && is_finite_term(terms_[0])); }

bool Ordinal::is_successor() const { return !terms_.empty() && is_finite_term(terms_.back()); }

std::optional<Integer> Ordinal::finite_value() const {
  if (terms_.empty()) return Integer(0);
  if (!is_finite()) return std::nullopt;
  return terms_[0].coefficient;
}

std::uint64_t Ordinal::to_u64() const {
  auto v = finite_value();
  if (!v || !v->fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, "ordinal " + str() + " is not a small natural number");
  return v->get_ui();
}

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw Error(ErrorCode::InvalidArgument, "ordinal " + str() + " has no predecessor");
  Ordinal r = *this;
  if (r.terms_.back().coefficient == 1)
    r.terms_.pop_back();
  else
    r.terms_.back().coefficient -= 1;
  return r;
}

Ordinal Ordinal::leading_exponent() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "zero has no leading term");
  return exponent_of(terms_[0]);
}

Integer Ordinal::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "zero has no leading term");
  return terms_[0].coefficient;
}

int Ordinal::max_epsilon_index() const {
  int m = -1;
  for (const auto& t : terms_) m = std::max(m, t.is_epsilon() ? t.epsilon : t.exponent->max_epsilon_index());
  return m;
}

std::string Ordinal::str() const { return format(*this, false); }
std::string Ordinal::pretty() const { return format(*this, true); }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  switch (cmp_ord(a, b)) {
    case Cmp::LT: return std::strong_ordering::less;
    case Cmp::GT: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

bool operator==(const Ordinal& a, const Ordinal& b) { return cmp_ord(a, b) == Cmp::EQ; }

Cmp compare(const Ordinal& a, const Ordinal& b) { return cmp_ord(a, b); }

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const OrdinalTerm& lead = b.terms().front();
  std::vector<OrdinalTerm> out;
  std::size_t i = 0;
  const auto& ta = a.terms();
  while (i < ta.size() && cmp_exponent(ta[i], lead) == Cmp::GT) out.push_back(ta[i++]);
  std::size_t j = 0;
  if (i < ta.size() && cmp_exponent(ta[i], lead) == Cmp::EQ) {
    OrdinalTerm merged = lead;
    merged.coefficient += ta[i].coefficient;
    out.push_back(std::move(merged));
    j = 1;
  }
  for (; j < b.terms().size(); ++j) out.push_back(b.terms()[j]);
  Ordinal r;
  r = Ordinal::from_terms(std::move(out));
  return r;
}

Ordinal operator*(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  Ordinal result;
  const Ordinal lead_exp = exponent_of(a.terms().front());
  for (const OrdinalTerm& t : b.terms()) {
    Ordinal piece;
    if (is_finite_term(t)) {
      std::vector<OrdinalTerm> ts = a.terms();
      ts.front().coefficient *= t.coefficient;
      piece = Ordinal::from_terms(std::move(ts));
    } else {
      piece = Ordinal::from_terms({make_term(lead_exp + exponent_of(t), t.coefficient)});
    }
    result = result + piece;
  }
  return result;
}

Ordinal add(const Ordinal& a, const Ordinal& b) { return a + b; }
Ordinal mul(const Ordinal& a, const Ordinal& b) { return a * b; }

Ordinal omega_pow(const Ordinal& a) { return Ordinal::from_terms({make_term(a, 1)}); }

Ordinal left_subtract(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t i = 0;
  auto rest_of_b = [&](std::size_t from, std::optional<Integer> first_coeff) {
    std::vector<OrdinalTerm> out(tb.begin() + static_cast<std::ptrdiff_t>(from), tb.end());
    if (first_coeff && !out.empty()) out.front().coefficient = *first_coeff;
    return Ordinal::from_terms(std::move(out));
  };
  for (;; ++i) {
    if (i == ta.size()) return rest_of_b(i, std::nullopt);
    if (i == tb.size()) break;
    Cmp e = cmp_exponent(ta[i], tb[i]);
    if (e == Cmp::LT) return rest_of_b(i, std::nullopt);
    if (e == Cmp::GT) break;
    if (ta[i].coefficient < tb[i].coefficient)
      return rest_of_b(i, Integer(tb[i].coefficient - ta[i].coefficient));
    if (ta[i].coefficient > tb[i].coefficient) break;
  }
  throw Error(ErrorCode::InvalidArgument, "left_subtract requires " + a.str() + " <= " + b.str());
}

bool is_mult_indecomposable(const Ordinal& a) {
  if (a.is_zero()) throw Error(ErrorCode::InvalidArgument, "is_mult_indecomposable requires a > 0");
  if (a.terms().size() != 1 || a.terms()[0].coefficient != 1) return false;
  const OrdinalTerm& t = a.terms()[0];
  if (t.is_epsilon()) return true;
  const Ordinal& e = *t.exponent;
  if (e.is_zero()) return true;  // a = 1
  return e.terms().size() == 1 && e.terms()[0].coefficient == 1;
}

std::pair<Ordinal, Integer> ms_invariant(const Ordinal& a) {
  if (!a.is_successor()) throw Error(ErrorCode::InvalidArgument, "ms_invariant requires a successor ordinal, got " + a.str());
  Ordinal d = a.predecessor();
  if (d.is_zero()) return {Ordinal(), Integer(0)};
  return {d.leading_exponent(), d.leading_coefficient()};
}

std::size_t hash_value(const Ordinal& a) {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& t : a.terms()) {
    mix(t.is_epsilon() ? 0xE000u + static_cast<std::size_t>(t.epsilon) : hash_value(*t.exponent));
    mix(std::hash<std::string>{}(t.coefficient.get_str(16)));
  }
  return h;
}

Ordinal OrdinalSampler::below(const Ordinal& bound, std::mt19937_64& rng) const {
  if (bound.is_zero()) throw Error(ErrorCode::InvalidArgument, "no ordinal below 0");
  return below_impl(bound, depth, rng);
}

Ordinal OrdinalSampler::below_impl(const Ordinal& bound, unsigned d, std::mt19937_64& rng) const {
  const auto& ts = bound.terms();
  std::uniform_int_distribution<std::size_t> pick_term(0, ts.size() - 1);
  std::size_t i = pick_term(rng);
  std::vector<OrdinalTerm> prefix(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(i));
  Ordinal base = Ordinal::from_terms(std::move(prefix));
  const OrdinalTerm& t = ts[i];
  Integer copies;
  if (t.coefficient.fits_ulong_p()) {
    std::uint64_t c = t.coefficient.get_ui();
    std::uniform_int_distribution<std::uint64_t> pick(0, c - 1);
    copies = static_cast<unsigned long>(std::bernoulli_distribution(0.25)(rng) ? c - 1 : pick(rng));
  } else {
    copies = static_cast<unsigned long>(std::uniform_int_distribution<unsigned>(0, 1000)(rng));
  }
  Ordinal e = exponent_of(t);
  if (e.is_zero()) return base + Ordinal::finite(copies);
  Ordinal block = omega_pow(e);
  return base + block * Ordinal::finite(copies) + below_power(e, d, rng);
}

Ordinal OrdinalSampler::below_power(const Ordinal& e, unsigned d, std::mt19937_64& rng) const {
  std::uniform_int_distribution<unsigned> small(0, finite_cap);
  if (d == 0 || std::bernoulli_distribution(1.0 / 3)(rng)) return Ordinal(small(rng));
  Ordinal f;
  const auto& et = e.terms();
  if (et.size() == 1 && et[0].is_epsilon() && et[0].coefficient == 1 && et[0].epsilon > 0 &&
      std::bernoulli_distribution(0.5)(rng)) {
    f = Ordinal::epsilon(et[0].epsilon - 1) + Ordinal(std::uniform_int_distribution<int>(0, 2)(rng));
  } else {
    f = below_impl(e, d - 1, rng);
  }
  if (f.is_zero()) return Ordinal(small(rng));
  Ordinal c(std::uniform_int_distribution<int>(1, 3)(rng));
  return omega_pow(f) * c + below_power(f, d - 1, rng);
}

}  // namespace efk
