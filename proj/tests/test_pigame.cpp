#include <random>
#include <set>

#include "doctest.h"
#include "efk/pigame.hpp"

using namespace efk;

namespace {

Gaussian G(const char* s) { return Gaussian::parse(s); }

Vec V(std::initializer_list<const char*> xs) {
  Vec v;
  for (const char* x : xs) v.push_back(G(x));
  return v;
}

// The generated unital *-subalgebras are C^(cells); the map extends iff both
// sides realize the same set of coordinate columns.
bool column_oracle(const std::vector<std::pair<Vec, Vec>>& pairs, std::size_t da, std::size_t db) {
  std::set<std::vector<Gaussian>> ca, cb;
  for (std::size_t i = 0; i < da; ++i) {
    std::vector<Gaussian> col;
    for (const auto& p : pairs) col.push_back(p.first[i]);
    ca.insert(col);
  }
  for (std::size_t i = 0; i < db; ++i) {
    std::vector<Gaussian> col;
    for (const auto& p : pairs) col.push_back(p.second[i]);
    cb.insert(col);
  }
  return ca == cb;
}

Vec random_vec(std::mt19937_64& rng, std::size_t dim) {
  Vec v;
  for (std::size_t i = 0; i < dim; ++i)
    v.emplace_back(Rational(std::uniform_int_distribution<int>(-1, 1)(rng)), Rational(std::uniform_int_distribution<int>(0, 1)(rng)));
  return v;
}

}  // namespace

TEST_SUITE("pigame") {
  TEST_CASE("Gaussian rationals print and parse") {
    for (const char* s : {"0", "3", "-1/2", "i", "-i", "1+i", "2-3i", "1/2+1/3i", "-1/2-i"}) CHECK(G(s).str() == s);
    CHECK(G("2i") == Gaussian(0, 2));
    CHECK((G("1+i") * G("1-i")) == G("2"));
    CHECK(G("3+4i").norm2() == 25);
    CHECK_THROWS_AS(G(""), ParseError);
  }

  TEST_CASE("sup norm and distances are exact squares") {
    CHECK(sup_norm2(V({"1", "1+i", "-2"})) == 4);
    CHECK(distance2(V({"1", "i"}), V({"1", "0"})) == 1);
    CHECK_THROWS_AS(distance2(V({"1"}), V({"1", "2"})), Error);
    CHECK(conj(V({"1+i"})) == V({"1-i"}));
    CHECK(V({"i", "2"}) * V({"i", "3"}) == V({"-1", "6"}));
  }

  TEST_CASE("generated partition groups equal columns") {
    auto cells = generated_partition({V({"1", "2", "1", "2"}), V({"0", "0", "0", "5"})}, 4);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0] == std::vector<std::size_t>{0, 2});
    CHECK(cells[1] == std::vector<std::size_t>{1});
    CHECK(cells[2] == std::vector<std::size_t>{3});
    CHECK(generated_partition({}, 3).size() == 1);
  }

  TEST_CASE("legality of probes and answers") {
    ToyAlgebra a{2}, b{2};
    PiPosition p(Ordinal(2));
    auto expect = [&](auto f, ErrorCode code) {
      try {
        f();
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.code() == code);
      }
    };
    expect([&] { pi_step(p, PiMove{Ordinal(1), Side::A, V({"1", "1"}), 0}, a, b); }, ErrorCode::EpsNonPositive);
    expect([&] { pi_step(p, PiMove{Ordinal(1), Side::A, V({"1", "1"}), Rational(-1)}, a, b); }, ErrorCode::EpsNonPositive);
    expect([&] { pi_step(p, PiMove{Ordinal(2), Side::A, V({"1", "1"}), 1}, a, b); }, ErrorCode::ClockNotDecreasing);
    expect([&] { pi_step(p, PiMove{Ordinal(1), Side::A, V({"1"}), 1}, a, b); }, ErrorCode::DimensionMismatch);
    auto pending = pi_step(p, PiMove{Ordinal(1), Side::A, V({"1", "0"}), Rational(1, 2)}, a, b);
    expect([&] { pi_answer(pending, V({"3/2", "0"}), V({"1", "0"}), a, b); }, ErrorCode::AnswerOutsideBall);
    PiPosition next = pi_answer(pending, V({"5/4", "0"}), V({"0", "1"}), a, b);
    CHECK(next.size() == 1);
    CHECK(next.rounds()[0].eps == Rational(1, 2));
    expect([&] { check_win_pi(next, a, b); }, ErrorCode::GameNotOver);
  }

  TEST_CASE("win check agrees with the column oracle") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 3000; ++t) {
      std::size_t da = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
      std::size_t db = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
      std::vector<std::pair<Vec, Vec>> pairs;
      int rounds = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int r = 0; r < rounds; ++r) pairs.emplace_back(random_vec(rng, da), random_vec(rng, db));
      auto d = check_win_pi_detail(pairs, ToyAlgebra{da}, ToyAlgebra{db});
      REQUIRE((d.verdict == Verdict::IIWins) == column_oracle(pairs, da, db));
    }
  }

  TEST_CASE("witness bijection maps cells with matching values") {
    std::vector<std::pair<Vec, Vec>> pairs{{V({"1", "2", "2"}), V({"2", "1", "2"})}};
    auto d = check_win_pi_detail(pairs, ToyAlgebra{3}, ToyAlgebra{3});
    REQUIRE(d.verdict == Verdict::IIWins);
    CHECK(d.bijection == std::vector<std::size_t>{1, 0});
  }

  TEST_CASE("echo wins every random match on equal algebras") {
    for (std::size_t dim = 1; dim <= 4; ++dim) {
      ToyAlgebra a{dim};
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto m = play_pi_match(a, a, Ordinal(4), random_pi_player(a, a, seed), echo_strategy());
        REQUIRE(m.verdict == Verdict::IIWins);
        REQUIRE_FALSE(m.illegal);
      }
    }
  }

  TEST_CASE("permuted echo also wins at an infinite clock") {
    ToyAlgebra a{3};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto m = play_pi_match(a, a, Ordinal::omega(), random_pi_player(a, a, seed), echo_strategy({2, 0, 1}));
      REQUIRE(m.verdict == Verdict::IIWins);
    }
  }

  TEST_CASE("random play separates algebras of different dimension") {
    ToyAlgebra a{1}, b{2};
    std::size_t losses = 0;
    PiPlayerII copy_first{[](const PiPosition&, const PiMove& m) {
                            if (m.side == Side::A) return std::make_pair(m.probe, Vec{m.probe[0], m.probe[0]});
                            return std::make_pair(Vec{m.probe[0]}, m.probe);
                          },
                          Provenance::Scripted};
    for (std::uint64_t seed = 0; seed < 50; ++seed)
      losses += play_pi_match(a, b, Ordinal(3), random_pi_player(a, b, seed), copy_first).verdict == Verdict::IWins;
    CHECK(losses > 0);
  }
}
