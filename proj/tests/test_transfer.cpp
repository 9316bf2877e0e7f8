#include "doctest.h"
#include "efk/transfer.hpp"

using namespace efk;

namespace {

Ordinal P(const char* s) { return Ordinal::parse(s); }

// The auxiliary clocks of a match must form a strictly decreasing chain
// starting below the auxiliary initial clock.
bool strictly_decreasing(const Position<Ordinal>& aux) {
  Ordinal prev = aux.initial_clock();
  for (const auto& c : aux.clock_history()) {
    if (!(c < prev)) return false;
    prev = c;
  }
  return true;
}

}  // namespace

TEST_SUITE("transfer") {
  TEST_CASE("identity transfer wins on equal groups in both ambients") {
    for (const char* beta : {"w", "w+1"}) {
      for (const char* alpha : {"2", "3", "w"}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
          Ordinal b = P(beta);
          TransferMatch m = play_transfer_match(b, b, P(alpha), random_group_player(b, b, seed),
                                                identity_order_strategy());
          CAPTURE(beta);
          CAPTURE(alpha);
          CAPTURE(seed);
          CHECK(m.verdict == Verdict::IIWins);
          CHECK_FALSE(m.illegal.has_value());
          CHECK(m.final_check.verdict == Verdict::IIWins);
          CHECK(strictly_decreasing(m.auxiliary));
          CHECK(m.steps.size() == m.position.size());
        }
      }
    }
  }

  TEST_CASE("auxiliary slices tile the auxiliary position") {
    Ordinal b = P("w*2");
    TransferMatch m = play_transfer_match(b, b, P("3"), random_group_player(b, b, 7, 4), identity_order_strategy());
    std::size_t next = 0;
    for (const auto& s : m.steps) {
      CHECK(s.first_aux == next);
      CHECK(s.aux_count >= 2);  // 0 and the top are always fed
      next += s.aux_count;
    }
    CHECK(next == m.auxiliary.size());
  }

  TEST_CASE("the auxiliary clock of a round sits between w*c and w*(c+1)") {
    Ordinal b = P("w+1");
    TransferSession s(b, b, P("5"), identity_order_strategy());
    StepFunction f(IntervalPartition(b, {P("3"), P("w+1")}), {Rational(1), Rational(-2)});
    s.answer(Move<StepFunction>{P("4"), Side::A, f});
    for (const auto& c : s.auxiliary().clock_history()) {
      CHECK(P("w*4") <= c);
      CHECK(c < P("w*5"));
    }
    CHECK(s.steps().front().aux_count == 3);
  }

  TEST_CASE("transported element matches under the identity") {
    Ordinal b = P("w");
    TransferSession s(b, b, P("2"), identity_order_strategy());
    StepFunction f(IntervalPartition(b, {P("0"), P("5"), P("w")}), {Rational(2), Rational(-1), Rational(1, 2)});
    CHECK(s.answer(Move<StepFunction>{P("1"), Side::B, f}) == f.canonical());
  }

  TEST_CASE("element over the wrong ordinal is rejected") {
    TransferSession s(P("w"), P("w+1"), P("2"), karp_order_strategy(P("w+1"), P("w+2")));
    StepFunction wrong = StepFunction::constant(P("w+1"), Rational(1));
    CHECK_THROWS_AS(s.answer(Move<StepFunction>{P("1"), Side::A, wrong}), Error);
  }

  TEST_CASE("identity on unequal tops forfeits the engine") {
    Ordinal b = P("w"), g = P("w+1");
    TransferMatch m = play_transfer_match(b, g, P("2"), random_group_player(b, g, 3), identity_order_strategy());
    REQUIRE(m.illegal.has_value());
    CHECK(m.illegal->player == "II");
    CHECK(m.verdict == Verdict::IWins);
  }

  TEST_CASE("karp strategy basics") {
    OrdinalOrder a{P("w+1")}, b{P("w*2+1")};
    PlayerII<Ordinal> k = karp_order_strategy(P("w"), P("w*2"));
    Position<Ordinal> pos(P("w*3"));
    CHECK(k.answer(pos, Move<Ordinal>{P("w*2"), Side::A, P("w")}) == P("w*2"));
    CHECK(k.answer(pos, Move<Ordinal>{P("w*2"), Side::A, P("4")}) == P("4"));
    pos = efd_answer(efd_step(pos, Move<Ordinal>{P("w*2"), Side::A, P("4")}, a, b), P("4"), a, b);
    CHECK(k.answer(pos, Move<Ordinal>{P("w"), Side::A, P("4")}) == P("4"));
    // The identity stays in use while it is consistent.
    pos = efd_answer(efd_step(pos, Move<Ordinal>{P("w+5"), Side::B, P("w+3")}, a, b), P("w"), a, b);
    CHECK(k.answer(pos, Move<Ordinal>{P("w"), Side::A, P("8")}) == P("8"));
    // Past the last pair there is no room left in A: the answer falls
    // outside A and the match engine reports it as a forfeit.
    CHECK_FALSE(a.contains(k.answer(pos, Move<Ordinal>{P("w"), Side::B, P("w+7")})));
  }

  TEST_CASE("replay reproduces the auxiliary match") {
    Ordinal b = P("w+1");
    TransferMatch m = play_transfer_match(b, b, P("3"), random_group_player(b, b, 11), identity_order_strategy());
    TransferSession s = replay_transfer(identity_order_strategy(), b, b, m.position);
    CHECK(s.auxiliary().pairs() == m.auxiliary.pairs());
    CHECK(s.auxiliary().clock_history() == m.auxiliary.clock_history());
  }

  TEST_CASE("demo on equal epsilons with the identity") {
    TransferMatch m = demo_pipeline(0, 0, identity_order_strategy(), 3, 5);
    CHECK(m.verdict == Verdict::IIWins);
    CHECK(m.position.size() <= 3);
    CHECK_THROWS_AS(demo_pipeline(1, 0, identity_order_strategy(), 3, 5), Error);
    CHECK_THROWS_AS(demo_pipeline(0, 1, identity_order_strategy(), 0, 5), Error);
  }
}
