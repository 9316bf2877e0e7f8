#include <random>

#include "doctest.h"
#include "efk/brute_force.hpp"
#include "efk/linear_order.hpp"
#include "efk/transfer.hpp"

using namespace efk;

namespace {

Ordinal P(const char* s) { return Ordinal::parse(s); }

// Classical threshold: finite orders n, m are EFD_k-equivalent iff n = m or
// both have at least 2^k - 1 elements.
bool finite_oracle(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  std::uint64_t t = (1ull << k) - 1;
  return n == m || (n >= t && m >= t);
}

// One round (x, y) played from A, leaving `clock` on the board.
Position<Ordinal> pos_after(const Ordinal& clock, long long x, long long y) {
  return Position<Ordinal>(clock + Ordinal(1)).extended(Round<Ordinal>{clock, Side::A, Ordinal(x), Ordinal(y)});
}

// Legal but uninformed Player II.
PlayerII<Ordinal> random_answers(const OrdinalOrder& a, const OrdinalOrder& b, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return PlayerII<Ordinal>{[rng, a, b](const Position<Ordinal>&, const Move<Ordinal>& m) {
                             const OrdinalOrder& other = m.side == Side::A ? b : a;
                             return OrdinalSampler{}.below(other.length, *rng);
                           },
                           Provenance::Random};
}

}  // namespace

TEST_SUITE("efgame") {
  TEST_CASE("step rejects illegal Player I moves") {
    OrdinalOrder a{P("w")}, b{P("w+1")};
    Position<Ordinal> p(P("3"));
    CHECK_THROWS_WITH_AS(efd_step(p, Move<Ordinal>{P("3"), Side::A, P("0")}, a, b), doctest::Contains("not below"), Error);
    try {
      efd_step(p, Move<Ordinal>{P("5"), Side::A, P("0")}, a, b);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ClockNotDecreasing);
    }
    try {
      efd_step(p, Move<Ordinal>{P("1"), Side::A, P("w")}, a, b);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ElementNotInStructure);
    }
    auto pending = efd_step(p, Move<Ordinal>{P("0"), Side::B, P("w")}, a, b);
    Position<Ordinal> done = efd_answer(pending, P("5"), a, b);
    CHECK(done.over());
    try {
      efd_step(done, Move<Ordinal>{P("0"), Side::A, P("0")}, a, b);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GameOver);
    }
    CHECK(check_win(done, a, b) == Verdict::IIWins);
  }

  TEST_CASE("check_win needs a finished game") {
    OrdinalOrder a{P("3")};
    try {
      check_win(Position<Ordinal>(P("1")), a, a);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GameNotOver);
    }
    CHECK(check_win(Position<Ordinal>(P("0")), a, a) == Verdict::IIWins);
  }

  TEST_CASE("isomorphism test on played pairs") {
    OrdinalOrder a{P("w")};
    CHECK(induces_isomorphism(a, a, {{P("1"), P("2")}, {P("3"), P("5")}}));
    CHECK_FALSE(induces_isomorphism(a, a, {{P("1"), P("5")}, {P("3"), P("2")}}));
    CHECK_FALSE(induces_isomorphism(a, a, {{P("1"), P("2")}, {P("1"), P("3")}}));
    CHECK(induces_isomorphism(a, a, {{P("1"), P("2")}, {P("1"), P("2")}}));
  }

  TEST_CASE("brute force and the decider match the finite threshold oracle") {
    OrderGameDecider decider;
    for (std::uint64_t n = 0; n <= 8; ++n)
      for (std::uint64_t m = 0; m <= 8; ++m)
        for (std::uint64_t k = 0; k <= 3; ++k) {
          OrdinalOrder a{Ordinal(static_cast<long long>(n))}, b{Ordinal(static_cast<long long>(m))};
          auto r = brute_force_solve(a, b, k);
          INFO(n << " vs " << m << " at " << k);
          REQUIRE(r.ii_wins == finite_oracle(n, m, k));
          REQUIRE(decider.equivalent(a.length, b.length, k) == finite_oracle(n, m, k));
        }
  }

  TEST_CASE("brute force certificates win against every Player I line") {
    OrdinalOrder a{P("5")}, b{P("6")};
    auto r = brute_force_solve(a, b, 2);
    REQUIRE(r.ii_wins);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto m = play_match(a, b, P("2"), random_order_player(a, b, seed), r.ii);
      REQUIRE(m.verdict == Verdict::IIWins);
    }
    auto lose = brute_force_solve(a, b, 3);
    REQUIRE_FALSE(lose.ii_wins);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto m = play_match(a, b, P("3"), lose.i, karp_order_strategy(P("4"), P("5")));
      REQUIRE(m.verdict == Verdict::IWins);
    }
  }

  TEST_CASE("a greatest element separates successor from limit lengths at clock 2") {
    for (auto [x, y] : {std::pair{"w", "w+1"}, std::pair{"w*2", "w*2+1"}, std::pair{"w^(2)", "w^(2)+3"}}) {
      auto d = decide_equiv_finite_clock(P(x), P(y), 2);
      CHECK_FALSE(d.equivalent);
      CHECK(decide_equiv_finite_clock(P(x), P(y), 1).equivalent);
      OrdinalOrder a{P(x)}, b{P(y)};
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto m = play_match(a, b, P("2"), d.i, random_answers(a, b, seed));
        REQUIRE(m.verdict == Verdict::IWins);
      }
    }
  }

  TEST_CASE("w and w*2 are equivalent at clock 2 but not at 3") {
    CHECK(decide_equiv_finite_clock(P("w"), P("w*2"), 2).equivalent);
    CHECK_FALSE(decide_equiv_finite_clock(P("w"), P("w*2"), 3).equivalent);
  }

  TEST_CASE("decided Player II survives random play on equivalent pairs") {
    for (auto [x, y, k] : {std::tuple{"w", "w*2", 2}, std::tuple{"w*2+7", "w*3+7", 2}, std::tuple{"w+15", "w+16", 3}}) {
      auto d = decide_equiv_finite_clock(P(x), P(y), k);
      REQUIRE(d.equivalent);
      OrdinalOrder a{P(x)}, b{P(y)};
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto m = play_match(a, b, Ordinal(k), random_order_player(a, b, seed), d.ii);
        REQUIRE(m.verdict == Verdict::IIWins);
      }
    }
  }

  TEST_CASE("probe set and gaps") {
    auto probes = OrderGameDecider::probes(P("w+1"), 1);
    CHECK(std::is_sorted(probes.begin(), probes.end()));
    CHECK(std::find(probes.begin(), probes.end(), P("w")) != probes.end());
    CHECK(std::find(probes.begin(), probes.end(), P("0")) != probes.end());
    auto gaps = gaps_of(P("w*2"), {P("w"), P("3")});
    REQUIRE(gaps.size() == 3);
    CHECK(gaps[0].type == P("3"));
    CHECK(gaps[1].type == P("w"));
    CHECK(gaps[2].type == P("w"));
    CHECK(gaps[2].first == P("w+1"));
  }

  TEST_CASE("illegal strategy output forfeits") {
    OrdinalOrder a{P("3")}, b{P("3")};
    PlayerII<Ordinal> cheat{[](const Position<Ordinal>&, const Move<Ordinal>&) { return P("7"); }, Provenance::Scripted};
    auto m = play_match(a, b, P("2"), random_order_player(a, b, 1), cheat);
    CHECK(m.verdict == Verdict::IWins);
    REQUIRE(m.illegal);
    CHECK(m.illegal->player == "II");
    CHECK(m.illegal->code == ErrorCode::ElementNotInStructure);
  }

  TEST_CASE("decider positions") {
    OrderGameDecider d;
    OrdinalOrder a{P("w")}, b{P("w*2")};
    CHECK(d.position_good(a, b, pos_after(P("2"), 3, 3)));
    CHECK_FALSE(d.position_good(a, b, pos_after(P("2"), 3, 2)));
  }
}
