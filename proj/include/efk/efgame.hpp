#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efk/errors.hpp"
#include "efk/ordinal.hpp"

namespace efk {

enum class Side { A, B };
inline Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }
inline const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

enum class Verdict { IIWins, IWins };
inline const char* verdict_name(Verdict v) { return v == Verdict::IIWins ? "II_wins" : "I_wins"; }

enum class Provenance { BruteForce, Identity, KarpFamily, Transferred, Human, Decided, Random, Scripted };
inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::BruteForce: return "BruteForce";
    case Provenance::Identity: return "Identity";
    case Provenance::KarpFamily: return "KarpFamily";
    case Provenance::Transferred: return "Transferred";
    case Provenance::Human: return "Human";
    case Provenance::Decided: return "Decided";
    case Provenance::Random: return "Random";
    case Provenance::Scripted: return "Scripted";
  }
  return "Human";
}

template <class E>
struct Move {
  Ordinal clock;
  Side side = Side::A;
  E element;
};

template <class E>
struct Round {
  Ordinal clock;
  Side side = Side::A;
  E move;    // element chosen by Player I on `side`
  E answer;  // Player II's element on the opposite side

  const E& a() const { return side == Side::A ? move : answer; }
  const E& b() const { return side == Side::A ? answer : move; }
};

template <class E>
class Position {
 public:
  explicit Position(Ordinal initial_clock = Ordinal()) : initial_(std::move(initial_clock)) {}

  const Ordinal& initial_clock() const { return initial_; }
  const Ordinal& clock() const { return rounds_.empty() ? initial_ : rounds_.back().clock; }
  bool over() const { return clock().is_zero(); }
  const std::vector<Round<E>>& rounds() const { return rounds_; }
  std::size_t size() const { return rounds_.size(); }

  std::vector<std::pair<E, E>> pairs() const {
    std::vector<std::pair<E, E>> out;
    out.reserve(rounds_.size());
    for (const auto& r : rounds_) out.emplace_back(r.a(), r.b());
    return out;
  }
  std::vector<Ordinal> clock_history() const {
    std::vector<Ordinal> out;
    for (const auto& r : rounds_) out.push_back(r.clock);
    return out;
  }

  Position extended(Round<E> r) const {
    Position p = *this;
    p.rounds_.push_back(std::move(r));
    return p;
  }

 private:
  Ordinal initial_;
  std::vector<Round<E>> rounds_;
};

template <class E>
struct Pending {
  Position<E> position;
  Move<E> move;
};

// Validates a Player I move. S must provide `bool contains(const E&) const`.
template <class S, class E>
Pending<E> efd_step(const Position<E>& pos, Move<E> move, const S& a, const S& b) {
  if (pos.over()) throw Error(ErrorCode::GameOver, "the clock has reached 0; the game is over");
  if (!(move.clock < pos.clock()))
    throw Error(ErrorCode::ClockNotDecreasing,
                "new clock " + move.clock.str() + " is not below " + pos.clock().str());
  const S& side = move.side == Side::A ? a : b;
  if (!side.contains(move.element))
    throw Error(ErrorCode::ElementNotInStructure, std::string("move is not an element of side ") + side_name(move.side));
  return Pending<E>{pos, std::move(move)};
}

template <class S, class E>
Position<E> efd_answer(const Pending<E>& pending, E answer, const S& a, const S& b) {
  Side other = opposite(pending.move.side);
  const S& side = other == Side::A ? a : b;
  if (!side.contains(answer))
    throw Error(ErrorCode::ElementNotInStructure, std::string("answer is not an element of side ") + side_name(other));
  return pending.position.extended(Round<E>{pending.move.clock, pending.move.side, pending.move.element, std::move(answer)});
}

// The structure type supplies `induces_isomorphism(a, b, pairs)` via ADL.
template <class S, class E>
Verdict check_win(const Position<E>& pos, const S& a, const S& b) {
  if (!pos.over()) throw Error(ErrorCode::GameNotOver, "check_win requires the clock to have reached 0");
  return induces_isomorphism(a, b, pos.pairs()) ? Verdict::IIWins : Verdict::IWins;
}

template <class E>
struct PlayerII {
  std::function<E(const Position<E>&, const Move<E>&)> answer;
  Provenance provenance = Provenance::Human;
};

template <class E>
struct PlayerI {
  std::function<Move<E>(const Position<E>&)> choose;
  Provenance provenance = Provenance::Human;
};

struct IllegalPlay {
  std::size_t round = 0;
  std::string player;  // "I" or "II"
  ErrorCode code = ErrorCode::Internal;
  std::string message;
};

template <class E>
struct MatchResult {
  Position<E> position;
  Verdict verdict = Verdict::IIWins;
  std::optional<IllegalPlay> illegal;
};

// An illegal move forfeits the match for the player who made it.
template <class S, class E>
MatchResult<E> play_match(const S& a, const S& b, const Ordinal& clock, const PlayerI<E>& one,
                          const PlayerII<E>& two, std::size_t max_rounds = 1000) {
  MatchResult<E> result{Position<E>(clock), Verdict::IIWins, std::nullopt};
  Position<E>& pos = result.position;
  while (!pos.over()) {
    std::size_t round = pos.size();
    if (round >= max_rounds) {
      result.illegal = IllegalPlay{round, "I", ErrorCode::SearchLimit, "round limit reached before the clock hit 0"};
      result.verdict = Verdict::IIWins;
      return result;
    }
    std::optional<Pending<E>> pending;
    try {
      pending = efd_step(pos, one.choose(pos), a, b);
    } catch (const Error& e) {
      result.illegal = IllegalPlay{round, "I", e.code(), e.what()};
      result.verdict = Verdict::IIWins;
      return result;
    }
    try {
      pos = efd_answer(*pending, two.answer(pos, pending->move), a, b);
    } catch (const Error& e) {
      result.illegal = IllegalPlay{round, "II", e.code(), e.what()};
      result.verdict = Verdict::IWins;
      return result;
    }
  }
  result.verdict = check_win(pos, a, b);
  return result;
}

}  // namespace efk
