#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "efk/efgame.hpp"

namespace efk {

struct SolverOptions {
  std::size_t node_cap = 5'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Exact minimax for EFD games with finite clocks on finite structures.
// S needs `elements()`, `contains()` and an ADL `induces_isomorphism`.
template <class S>
class BruteForceSolver {
 public:
  using E = std::decay_t<decltype(std::declval<const S&>().elements().front())>;

  BruteForceSolver(S a, S b, SolverOptions options = {})
      : a_(std::move(a)), b_(std::move(b)), ea_(a_.elements()), eb_(b_.elements()), options_(options) {}

  bool ii_wins(std::uint64_t clock) { return wins({}, clock); }

  bool ii_wins_from(const Position<E>& pos) {
    if (pos.clock().is_zero()) return induces_isomorphism(a_, b_, pos.pairs());
    return wins(index_pairs(pos), clock_of(pos.clock()));
  }

  std::size_t nodes() const { return nodes_; }
  const S& a() const { return a_; }
  const S& b() const { return b_; }

  // Lexicographically smallest winning answer; the first element if none wins.
  std::optional<E> winning_answer(const Position<E>& pos, const Move<E>& move) {
    auto base = index_pairs(pos);
    std::uint64_t c = clock_of(move.clock);
    int x = index_of(move.side, move.element);
    const auto& other = move.side == Side::A ? eb_ : ea_;
    for (int y = 0; y < static_cast<int>(other.size()); ++y) {
      auto next = base;
      next.push_back(move.side == Side::A ? std::pair{x, y} : std::pair{y, x});
      if (wins(normalize(std::move(next)), c)) return other[y];
    }
    return std::nullopt;
  }

  // A move after which every answer loses for II, scanning clocks from the
  // top, side A before B, elements ascending.
  std::optional<Move<E>> winning_move(const Position<E>& pos) {
    if (pos.over()) return std::nullopt;
    auto base = index_pairs(pos);
    std::uint64_t top = clock_of(pos.clock());
    for (std::uint64_t c = top; c-- > 0;) {
      for (Side side : {Side::A, Side::B}) {
        const auto& mine = side == Side::A ? ea_ : eb_;
        const auto& other = side == Side::A ? eb_ : ea_;
        for (int x = 0; x < static_cast<int>(mine.size()); ++x) {
          bool refuted = true;
          for (int y = 0; y < static_cast<int>(other.size()) && refuted; ++y) {
            auto next = base;
            next.push_back(side == Side::A ? std::pair{x, y} : std::pair{y, x});
            if (wins(normalize(std::move(next)), c)) refuted = false;
          }
          if (refuted) return Move<E>{Ordinal(static_cast<long long>(c)), side, mine[x]};
        }
      }
    }
    return std::nullopt;
  }

 private:
  using Pairs = std::vector<std::pair<int, int>>;

  static std::uint64_t clock_of(const Ordinal& c) {
    if (!c.is_finite()) throw Error(ErrorCode::InvalidArgument, "brute force needs a finite clock");
    return c.to_u64();
  }

  int index_of(Side side, const E& e) const {
    const auto& v = side == Side::A ? ea_ : eb_;
    auto it = std::find(v.begin(), v.end(), e);
    if (it == v.end()) throw Error(ErrorCode::ElementNotInStructure, "element not in structure");
    return static_cast<int>(it - v.begin());
  }

  Pairs index_pairs(const Position<E>& pos) const {
    Pairs out;
    for (const auto& r : pos.rounds()) out.emplace_back(index_of(Side::A, r.a()), index_of(Side::B, r.b()));
    return normalize(std::move(out));
  }

  static Pairs normalize(Pairs p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
  }

  bool partial_iso(const Pairs& p) const {
    std::vector<std::pair<E, E>> elems;
    elems.reserve(p.size());
    for (auto [i, j] : p) elems.emplace_back(ea_[i], eb_[j]);
    return induces_isomorphism(a_, b_, elems);
  }

  void charge() {
    if (++nodes_ > options_.node_cap) throw Error(ErrorCode::SearchLimit, "brute-force node cap exceeded");
    if (options_.deadline && (nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > *options_.deadline)
      throw Error(ErrorCode::BudgetExceeded, "brute-force deadline exceeded");
  }

  bool wins(const Pairs& p, std::uint64_t clock) {
    auto key = std::make_pair(p, clock);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    charge();
    // Extending a failed partial isomorphism never repairs it.
    bool result = partial_iso(p);
    for (std::uint64_t c = clock; result && c-- > 0;) {
      for (Side side : {Side::A, Side::B}) {
        const auto& mine = side == Side::A ? ea_ : eb_;
        const auto& other = side == Side::A ? eb_ : ea_;
        for (int x = 0; x < static_cast<int>(mine.size()) && result; ++x) {
          bool answered = false;
          for (int y = 0; y < static_cast<int>(other.size()) && !answered; ++y) {
            Pairs next = p;
            next.push_back(side == Side::A ? std::pair{x, y} : std::pair{y, x});
            answered = wins(normalize(std::move(next)), c);
          }
          result = answered;
        }
        if (!result) break;
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  S a_, b_;
  std::vector<E> ea_, eb_;
  SolverOptions options_;
  std::map<std::pair<Pairs, std::uint64_t>, bool> memo_;
  std::size_t nodes_ = 0;
};

template <class S>
struct BruteForceResult {
  bool ii_wins = false;
  PlayerII<typename BruteForceSolver<S>::E> ii;
  PlayerI<typename BruteForceSolver<S>::E> i;
  std::shared_ptr<BruteForceSolver<S>> solver;
};

// Solves from the empty position and packages both certificate strategies.
// The strategies share the solver's memo table.
template <class S>
BruteForceResult<S> brute_force_solve(const S& a, const S& b, std::uint64_t clock, SolverOptions options = {}) {
  using E = typename BruteForceSolver<S>::E;
  auto solver = std::make_shared<BruteForceSolver<S>>(a, b, options);
  BruteForceResult<S> out;
  out.solver = solver;
  out.ii_wins = solver->ii_wins(clock);
  out.ii.provenance = Provenance::BruteForce;
  out.ii.answer = [solver](const Position<E>& pos, const Move<E>& move) -> E {
    if (auto y = solver->winning_answer(pos, move)) return *y;
    const auto& other = move.side == Side::A ? solver->b() : solver->a();
    auto elems = other.elements();
    if (elems.empty()) throw Error(ErrorCode::EngineForfeit, "no element available to answer with");
    return elems.front();
  };
  out.i.provenance = Provenance::BruteForce;
  out.i.choose = [solver](const Position<E>& pos) -> Move<E> {
    if (auto m = solver->winning_move(pos)) return *m;
    auto elems = solver->a().elements();
    Side side = Side::A;
    if (elems.empty()) {
      elems = solver->b().elements();
      side = Side::B;
    }
    if (elems.empty()) throw Error(ErrorCode::EngineForfeit, "both structures are empty");
    return Move<E>{Ordinal(static_cast<long long>(pos.clock().to_u64() - 1)), side, elems.front()};
  };
  return out;
}

}  // namespace efk
