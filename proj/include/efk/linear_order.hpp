#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "efk/efgame.hpp"
#include "efk/ordinal.hpp"

namespace efk {

// The ordinal `length` viewed as the linear order of all smaller ordinals.
struct OrdinalOrder {
  Ordinal length;

  bool contains(const Ordinal& x) const { return x < length; }
  bool is_finite() const { return length.is_finite(); }
  // All elements; only for finite lengths.
  std::vector<Ordinal> elements() const;
};

// Does a_i -> b_i preserve and reflect both < and =?
bool induces_isomorphism(const OrdinalOrder& a, const OrdinalOrder& b,
                         const std::vector<std::pair<Ordinal, Ordinal>>& pairs);

// Back-and-forth recursion on interval types with a finite canonical probe set.
class OrderGameDecider {
 public:
  bool equivalent(const Ordinal& a, const Ordinal& b, std::uint64_t m);

  // Canonical candidate points of the order `length` for a game with m
  // rounds left after the move. Sorted ascending, duplicates removed.
  static std::vector<Ordinal> probes(const Ordinal& length, std::uint64_t m);

  // Answer for a Player I move at a finite clock. Falls back to a legal
  // point when no probe keeps the position winning.
  Ordinal answer(const OrdinalOrder& a, const OrdinalOrder& b, const Position<Ordinal>& pos,
                 const Move<Ordinal>& move);
  // A move that wins for Player I, if the position is losing for II.
  std::optional<Move<Ordinal>> refutation(const OrdinalOrder& a, const OrdinalOrder& b,
                                          const Position<Ordinal>& pos);
  // True when the played points are order-consistent and every pair of
  // gaps is equivalent at the current clock.
  bool position_good(const OrdinalOrder& a, const OrdinalOrder& b, const Position<Ordinal>& pos);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  using TypePairs = std::vector<std::pair<Ordinal, Ordinal>>;
  const TypePairs& splits(const Ordinal& length, std::uint64_t m);
  std::optional<Ordinal> matching_point(const Ordinal& left, const Ordinal& right, const Ordinal& gap,
                                        std::uint64_t m);

  std::map<std::tuple<Ordinal, Ordinal, std::uint64_t>, bool> memo_;
  std::map<std::pair<Ordinal, std::uint64_t>, TypePairs> split_cache_;
};

struct OrderDecision {
  bool equivalent = false;
  PlayerII<Ordinal> ii;  // meaningful when equivalent
  PlayerI<Ordinal> i;    // meaningful when inequivalent
};

OrderDecision decide_equiv_finite_clock(const Ordinal& a, const Ordinal& b, std::uint64_t n);

// Gap between consecutive played points: the open interval (lo, hi), with
// lo absent for the initial segment and hi absent for the final one.
struct Gap {
  std::optional<Ordinal> lo, hi;
  Ordinal type;
  Ordinal first;  // least element of the gap (lo + 1 or 0)
};
// Gaps of one side in ascending order; `points` need not be sorted.
std::vector<Gap> gaps_of(const Ordinal& length, std::vector<Ordinal> points);

PlayerII<Ordinal> identity_order_strategy();

// Seeded random Player I: clock uniform below a finite clock (sampled below
// an infinite one), side fair, element sampled below the side's length.
PlayerI<Ordinal> random_order_player(const OrdinalOrder& a, const OrdinalOrder& b, std::uint64_t seed,
                                     OrdinalSampler sampler = {});

}  // namespace efk
