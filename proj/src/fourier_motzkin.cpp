#include "efk/fourier_motzkin.hpp"

#include <algorithm>
#include <map>

#include "efk/errors.hpp"
#include "efk/matrix.hpp"

namespace efk {
namespace {

// Scales to primitive integers; returns false if a constant-only row is violated.
bool normalize(LinearConstraint& c, bool& trivial) {
  trivial = std::all_of(c.coeffs.begin(), c.coeffs.end(), [](const Rational& x) { return x == 0; });
  if (trivial) return c.strict ? c.constant > 0 : c.constant >= 0;
  std::vector<Rational> all = c.coeffs;
  all.push_back(c.constant);
  all = primitive(std::move(all));
  c.constant = all.back();
  all.pop_back();
  c.coeffs = std::move(all);
  return true;
}

using Key = std::pair<std::vector<Rational>, Rational>;

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    for (std::size_t i = 0; i < a.first.size(); ++i)
      if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
    return a.second < b.second;
  }
};

// Deduplicates; returns false on an immediate contradiction.
bool tidy(std::vector<LinearConstraint>& sys) {
  std::map<Key, bool, KeyLess> seen;
  for (auto& c : sys) {
    bool trivial = false;
    if (!normalize(c, trivial)) return false;
    if (trivial) continue;
    auto [it, inserted] = seen.emplace(Key{c.coeffs, c.constant}, c.strict);
    if (!inserted) it->second = it->second || c.strict;
  }
  sys.clear();
  for (auto& [k, strict] : seen) sys.push_back(LinearConstraint{k.first, k.second, strict});
  return true;
}

}  // namespace

bool fm_feasible(std::vector<LinearConstraint> sys, const FmOptions& options) {
  if (sys.empty()) return true;
  std::size_t n = sys.front().coeffs.size();
  for (const auto& c : sys)
    if (c.coeffs.size() != n) throw Error(ErrorCode::InvalidArgument, "constraint arity mismatch");
  std::vector<bool> eliminated(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    if (!tidy(sys)) return false;
    if (sys.empty()) return true;
    // Pick the variable with the cheapest elimination.
    std::size_t best = n, best_cost = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& c : sys) {
        if (c.coeffs[v] > 0) ++pos;
        else if (c.coeffs[v] < 0) ++neg;
      }
      std::size_t cost = pos * neg;
      if (best == n || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    eliminated[best] = true;
    std::vector<LinearConstraint> pos, neg, next;
    for (auto& c : sys) {
      if (c.coeffs[best] > 0) pos.push_back(std::move(c));
      else if (c.coeffs[best] < 0) neg.push_back(std::move(c));
      else next.push_back(std::move(c));
    }
    if (next.size() + pos.size() * neg.size() > options.max_constraints)
      throw Error(ErrorCode::SearchLimit, "Fourier-Motzkin constraint count exceeds cap");
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rational a = p.coeffs[best], b = -q.coeffs[best];
        LinearConstraint r;
        r.coeffs.resize(n);
        for (std::size_t j = 0; j < n; ++j) r.coeffs[j] = b * p.coeffs[j] + a * q.coeffs[j];
        r.coeffs[best] = 0;
        r.constant = b * p.constant + a * q.constant;
        r.strict = p.strict || q.strict;
        next.push_back(std::move(r));
      }
    sys = std::move(next);
  }
  return tidy(sys);
}

}  // namespace efk
