#include "efk/linear_order.hpp"

#include <algorithm>
#include <set>

namespace efk {

std::vector<Ordinal> OrdinalOrder::elements() const {
  if (!length.is_finite()) throw Error(ErrorCode::UnsupportedStructure, "cannot enumerate an infinite order");
  std::uint64_t n = length.to_u64();
  std::vector<Ordinal> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.emplace_back(static_cast<long long>(i));
  return out;
}

bool induces_isomorphism(const OrdinalOrder&, const OrdinalOrder&,
                         const std::vector<std::pair<Ordinal, Ordinal>>& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (compare(pairs[i].first, pairs[j].first) != compare(pairs[i].second, pairs[j].second)) return false;
  return true;
}

namespace {

Ordinal term_exponent(const OrdinalTerm& t) {
  if (t.is_epsilon()) return Ordinal::epsilon(t.epsilon);
  return t.exponent ? *t.exponent : Ordinal();
}

Ordinal rest_after(const Ordinal& x, const Ordinal& end) { return left_subtract(x + Ordinal(1), end); }

// Points below omega^e used as offsets inside one copy of a CNF block.
std::vector<Ordinal> inner_offsets(const Ordinal& e, std::uint64_t m) {
  const std::uint64_t tails = std::uint64_t{1} << std::min<std::uint64_t>(m, 20);
  const std::uint64_t copies = m + 1;
  std::vector<Ordinal> out;
  for (std::uint64_t t = 0; t <= tails; ++t) out.emplace_back(static_cast<long long>(t));
  if (e.is_zero()) return {Ordinal()};
  std::set<Ordinal> exps;
  for (std::uint64_t f = 1; f <= m; ++f)
    if (Ordinal(static_cast<long long>(f)) < e) exps.insert(Ordinal(static_cast<long long>(f)));
  if (e.is_successor() && !e.predecessor().is_zero()) exps.insert(e.predecessor());
  for (const Ordinal& f : exps) {
    Ordinal block = omega_pow(f);
    for (std::uint64_t c = 1; c <= copies; ++c) {
      Ordinal head = block * Ordinal(static_cast<long long>(c));
      for (std::uint64_t t = 0; t <= tails; ++t) out.push_back(head + Ordinal(static_cast<long long>(t)));
    }
  }
  return out;
}

}  // namespace

std::vector<Ordinal> OrderGameDecider::probes(const Ordinal& length, std::uint64_t m) {
  const std::uint64_t tails = std::uint64_t{1} << std::min<std::uint64_t>(m, 20);
  std::vector<Ordinal> out;
  Ordinal prefix;
  for (const OrdinalTerm& term : length.terms()) {
    Ordinal e = term_exponent(term);
    Ordinal block = omega_pow(e);
    std::set<Integer> ds;
    const Integer& c = term.coefficient;
    for (Integer d = 0; d <= tails && d < c; ++d) ds.insert(d);
    for (Integer d = c - 1; d >= 0 && d + tails >= c - 1; --d) ds.insert(d);
    std::vector<Ordinal> inner = e.is_zero() ? std::vector<Ordinal>{Ordinal()} : inner_offsets(e, m);
    for (const Integer& d : ds) {
      Ordinal base = prefix + block * Ordinal::finite(d);
      for (const Ordinal& y : inner) out.push_back(base + y);
    }
    prefix = prefix + block * Ordinal::finite(c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const OrderGameDecider::TypePairs& OrderGameDecider::splits(const Ordinal& length, std::uint64_t m) {
  auto key = std::make_pair(length, m);
  if (auto it = split_cache_.find(key); it != split_cache_.end()) return it->second;
  std::set<std::pair<Ordinal, Ordinal>> seen;
  for (const Ordinal& x : probes(length, m)) seen.emplace(x, rest_after(x, length));
  return split_cache_.emplace(key, TypePairs(seen.begin(), seen.end())).first->second;
}

bool OrderGameDecider::equivalent(const Ordinal& a, const Ordinal& b, std::uint64_t m) {
  if (m == 0 || a == b) return true;
  if (a.is_zero() != b.is_zero()) return false;
  const Ordinal& lo = a < b ? a : b;
  const Ordinal& hi = a < b ? b : a;
  auto key = std::make_tuple(lo, hi, m);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  // Copies: the recursion below may rehash the split cache.
  TypePairs sa = splits(lo, m - 1);
  TypePairs sb = splits(hi, m - 1);
  auto covered = [&](const TypePairs& from, const TypePairs& to) {
    for (const auto& [l, r] : from) {
      bool found = false;
      for (const auto& [l2, r2] : to) {
        if (equivalent(l, l2, m - 1) && equivalent(r, r2, m - 1)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  bool result = covered(sa, sb) && covered(sb, sa);
  memo_[key] = result;
  return result;
}

std::optional<Ordinal> OrderGameDecider::matching_point(const Ordinal& left, const Ordinal& right,
                                                        const Ordinal& gap, std::uint64_t m) {
  for (const Ordinal& u : probes(gap, m))
    if (equivalent(left, u, m) && equivalent(right, rest_after(u, gap), m)) return u;
  return std::nullopt;
}

std::vector<Gap> gaps_of(const Ordinal& length, std::vector<Ordinal> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Gap> out;
  std::optional<Ordinal> lo;
  auto close = [&](const std::optional<Ordinal>& hi) {
    Ordinal first = lo ? *lo + Ordinal(1) : Ordinal();
    const Ordinal& end = hi ? *hi : length;
    out.push_back(Gap{lo, hi, left_subtract(first, end), first});
  };
  for (const Ordinal& p : points) {
    close(p);
    lo = p;
  }
  close(std::nullopt);
  return out;
}

namespace {

struct Layout {
  bool consistent = false;
  std::vector<Gap> ga, gb;
};

Layout layout_of(const OrdinalOrder& a, const OrdinalOrder& b, const Position<Ordinal>& pos) {
  Layout out;
  auto pairs = pos.pairs();
  if (!induces_isomorphism(a, b, pairs)) return out;
  std::vector<Ordinal> pa, pb;
  for (auto& [x, y] : pairs) {
    pa.push_back(x);
    pb.push_back(y);
  }
  out.ga = gaps_of(a.length, pa);
  out.gb = gaps_of(b.length, pb);
  out.consistent = true;
  return out;
}

std::uint64_t finite_clock(const Ordinal& c) {
  if (!c.is_finite()) throw Error(ErrorCode::UnsupportedStructure, "decided strategies need finite clocks");
  return c.to_u64();
}

std::size_t gap_index(const std::vector<Gap>& gaps, const Ordinal& x) {
  for (std::size_t i = 0; i < gaps.size(); ++i)
    if (!gaps[i].hi || x < *gaps[i].hi) return i;
  return gaps.size() - 1;
}

Ordinal any_element(const OrdinalOrder& s) {
  if (s.length.is_zero()) throw Error(ErrorCode::EngineForfeit, "no element available");
  return Ordinal();
}

}  // namespace

bool OrderGameDecider::position_good(const OrdinalOrder& a, const OrdinalOrder& b, const Position<Ordinal>& pos) {
  Layout l = layout_of(a, b, pos);
  if (!l.consistent) return false;
  std::uint64_t c = finite_clock(pos.clock());
  for (std::size_t i = 0; i < l.ga.size(); ++i)
    if (!equivalent(l.ga[i].type, l.gb[i].type, c)) return false;
  return true;
}

Ordinal OrderGameDecider::answer(const OrdinalOrder& a, const OrdinalOrder& b, const Position<Ordinal>& pos,
                                 const Move<Ordinal>& move) {
  const OrdinalOrder& other = move.side == Side::A ? b : a;
  for (const auto& r : pos.rounds()) {
    if (move.side == Side::A && r.a() == move.element) return r.b();
    if (move.side == Side::B && r.b() == move.element) return r.a();
  }
  Layout l = layout_of(a, b, pos);
  if (!l.consistent) return any_element(other);
  std::uint64_t m = finite_clock(move.clock);
  const auto& mine = move.side == Side::A ? l.ga : l.gb;
  const auto& theirs = move.side == Side::A ? l.gb : l.ga;
  std::size_t i = gap_index(mine, move.element);
  const Gap& g = mine[i];
  const Gap& h = theirs[i];
  Ordinal left = left_subtract(g.first, move.element);
  Ordinal right = rest_after(move.element, g.hi ? *g.hi : (move.side == Side::A ? a : b).length);
  if (auto u = matching_point(left, right, h.type, m)) return h.first + *u;
  if (!h.type.is_zero()) return h.first;
  return any_element(other);
}

std::optional<Move<Ordinal>> OrderGameDecider::refutation(const OrdinalOrder& a, const OrdinalOrder& b,
                                                          const Position<Ordinal>& pos) {
  if (pos.over()) return std::nullopt;
  std::uint64_t c = finite_clock(pos.clock());
  Ordinal next(static_cast<long long>(c - 1));
  Layout l = layout_of(a, b, pos);
  if (!l.consistent) {
    if (!a.length.is_zero()) return Move<Ordinal>{next, Side::A, Ordinal()};
    if (!b.length.is_zero()) return Move<Ordinal>{next, Side::B, Ordinal()};
    return std::nullopt;
  }
  for (std::size_t i = 0; i < l.ga.size(); ++i) {
    if (equivalent(l.ga[i].type, l.gb[i].type, c)) continue;
    for (Side side : {Side::A, Side::B}) {
      const Gap& g = side == Side::A ? l.ga[i] : l.gb[i];
      const Gap& h = side == Side::A ? l.gb[i] : l.ga[i];
      for (const Ordinal& u : probes(g.type, c - 1)) {
        if (!matching_point(u, rest_after(u, g.type), h.type, c - 1))
          return Move<Ordinal>{next, side, g.first + u};
      }
    }
  }
  return std::nullopt;
}

OrderDecision decide_equiv_finite_clock(const Ordinal& a, const Ordinal& b, std::uint64_t n) {
  OrdinalLimits limits;
  if (a.max_epsilon_index() > limits.max_epsilon || b.max_epsilon_index() > limits.max_epsilon)
    throw Error(ErrorCode::UnsupportedStructure, "notation exceeds the supported epsilon constants");
  auto decider = std::make_shared<OrderGameDecider>();
  OrderDecision out;
  out.equivalent = decider->equivalent(a, b, n);
  OrdinalOrder oa{a}, ob{b};
  out.ii.provenance = Provenance::Decided;
  out.ii.answer = [decider, oa, ob](const Position<Ordinal>& pos, const Move<Ordinal>& move) {
    return decider->answer(oa, ob, pos, move);
  };
  out.i.provenance = Provenance::Decided;
  out.i.choose = [decider, oa, ob](const Position<Ordinal>& pos) {
    if (auto m = decider->refutation(oa, ob, pos)) return *m;
    Ordinal next = pos.clock().is_finite() ? pos.clock().predecessor() : Ordinal();
    if (!oa.length.is_zero()) return Move<Ordinal>{next, Side::A, Ordinal()};
    return Move<Ordinal>{next, Side::B, Ordinal()};
  };
  return out;
}

PlayerII<Ordinal> identity_order_strategy() {
  return PlayerII<Ordinal>{[](const Position<Ordinal>&, const Move<Ordinal>& m) { return m.element; },
                           Provenance::Identity};
}

PlayerI<Ordinal> random_order_player(const OrdinalOrder& a, const OrdinalOrder& b, std::uint64_t seed,
                                     OrdinalSampler sampler) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return PlayerI<Ordinal>{
      [rng, a, b, sampler](const Position<Ordinal>& pos) {
        const Ordinal& clock = pos.clock();
        Ordinal next;
        if (clock.is_finite()) {
          std::uniform_int_distribution<std::uint64_t> pick(0, clock.to_u64() - 1);
          next = Ordinal(static_cast<long long>(pick(*rng)));
        } else {
          next = sampler.below(clock, *rng);
        }
        Side side = std::bernoulli_distribution(0.5)(*rng) ? Side::A : Side::B;
        if ((side == Side::A ? a : b).length.is_zero()) side = opposite(side);
        const OrdinalOrder& s = side == Side::A ? a : b;
        if (s.length.is_zero()) throw Error(ErrorCode::EngineForfeit, "both orders are empty");
        return Move<Ordinal>{next, side, sampler.below(s.length, *rng)};
      },
      Provenance::Random};
}

}  // namespace efk
