#include <string>
#include <map>
#include <random>

#include "doctest.h"
#include "efk/errors.hpp"
#include "efk/ordinal.hpp"

using namespace efk;

namespace {

Ordinal P(const std::string& s) { return Ordinal::parse(s); }

// Ordinals below w^w as exponent -> coefficient, for an arithmetic oracle
// that shares no code with the library.
using Cnf = std::map<unsigned, unsigned long, std::greater<>>;

Cnf random_cnf(std::mt19937_64& rng) {
  Cnf c;
  int terms = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < terms; ++i)
    c[std::uniform_int_distribution<unsigned>(0, 3)(rng)] += std::uniform_int_distribution<unsigned long>(1, 4)(rng);
  return c;
}

Ordinal to_ordinal(const Cnf& c) {
  Ordinal out;
  for (const auto& [e, k] : c) out = out + omega_pow(Ordinal(e)) * Ordinal(static_cast<long long>(k));
  return out;
}

unsigned lead(const Cnf& c) { return c.empty() ? 0 : c.begin()->first; }

Cnf oracle_add(const Cnf& a, const Cnf& b) {
  if (b.empty()) return a;
  unsigned e = lead(b);
  Cnf out;
  for (const auto& [x, k] : a)
    if (x >= e) out[x] = k;
  for (const auto& [x, k] : b) out[x] += k;
  return out;
}

Cnf oracle_mul(const Cnf& a, const Cnf& b) {
  if (a.empty() || b.empty()) return {};
  Cnf out;
  for (const auto& [e, k] : b) {
    Cnf piece;
    if (e > 0) {
      piece[lead(a) + e] = k;
    } else {
      piece = a;
      piece[lead(a)] = a.begin()->second * k;
    }
    out = oracle_add(out, piece);
  }
  return out;
}

int oracle_cmp(const Cnf& a, const Cnf& b) {
  auto i = a.begin(), j = b.begin();
  for (; i != a.end() && j != b.end(); ++i, ++j) {
    if (i->first != j->first) return i->first > j->first ? 1 : -1;
    if (i->second != j->second) return i->second > j->second ? 1 : -1;
  }
  if (i == a.end() && j == b.end()) return 0;
  return i == a.end() ? -1 : 1;
}

}  // namespace

TEST_SUITE("ordinal") {
  TEST_CASE("notation round-trips through parse and str") {
    for (const char* s : {"0", "7", "w", "w+1", "w*2+3", "w^(2)", "w^(w)", "w^(w+1)*3+w*2+5", "e0", "e3+w", "w^(e1+1)"})
      CHECK(P(s).str() == P(P(s).str()).str());
    CHECK(P("w^(w)").pretty() == "ω^ω");
    CHECK(P("e1+1").pretty() == "ε_1+1");
    CHECK_THROWS_AS(P("w+"), ParseError);
    CHECK_THROWS_AS(P("e_0"), ParseError);
  }

  TEST_CASE("finite heads are absorbed") {
    CHECK(Ordinal(3) + Ordinal::omega() == Ordinal::omega());
    CHECK(Ordinal(2) * Ordinal::omega() == Ordinal::omega());
    CHECK(Ordinal::omega() * Ordinal(2) == P("w*2"));
    CHECK(Ordinal::omega() + Ordinal::omega() == P("w*2"));
  }

  TEST_CASE("left_subtract") {
    CHECK(left_subtract(P("w"), P("w*2")) == P("w"));
    CHECK(left_subtract(P("3"), P("w")) == P("w"));
    CHECK(left_subtract(P("w+1"), P("w+4")) == P("3"));
    CHECK_THROWS_AS(left_subtract(P("w+1"), P("w")), Error);
  }

  TEST_CASE("multiplicative indecomposability") {
    CHECK(is_mult_indecomposable(P("e0")));
    CHECK(is_mult_indecomposable(P("w")));
    CHECK(is_mult_indecomposable(P("w^(w)")));
    CHECK(is_mult_indecomposable(P("1")));
    CHECK_FALSE(is_mult_indecomposable(P("w*2")));
    CHECK_FALSE(is_mult_indecomposable(P("w^(2)")));
  }

  TEST_CASE("homeomorphism invariant of successor ordinals") {
    CHECK(ms_invariant(P("w+2")) == std::make_pair(P("1"), Integer(1)));
    CHECK(ms_invariant(P("e0+1")) == std::make_pair(P("e0"), Integer(1)));
    CHECK(ms_invariant(P("5")) == std::make_pair(P("0"), Integer(4)));
    CHECK(ms_invariant(P("w*3+7")) == std::make_pair(P("1"), Integer(3)));
    CHECK(ms_invariant(P("w+1")) == ms_invariant(P("w+5")));
    CHECK_THROWS_AS(ms_invariant(P("0")), Error);
    CHECK_THROWS_AS(ms_invariant(P("w")), Error);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        Ordinal a = Ordinal::epsilon(i) + Ordinal(1), b = Ordinal::epsilon(j) + Ordinal(1);
        CHECK((ms_invariant(a) == ms_invariant(b)) == (i == j));
      }
  }

  TEST_CASE("arithmetic below w^w agrees with an independent oracle") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 2000; ++t) {
      Cnf a = random_cnf(rng), b = random_cnf(rng);
      Ordinal x = to_ordinal(a), y = to_ordinal(b);
      REQUIRE(x + y == to_ordinal(oracle_add(a, b)));
      REQUIRE(x * y == to_ordinal(oracle_mul(a, b)));
      int c = oracle_cmp(a, b);
      REQUIRE((compare(x, y) == Cmp::LT) == (c < 0));
      REQUIRE((compare(x, y) == Cmp::EQ) == (c == 0));
    }
  }

  TEST_CASE("algebraic laws on sampled ordinals") {
    std::mt19937_64 rng(5);
    OrdinalSampler sampler;
    const Ordinal bound = P("w^(w^(2))");
    for (int t = 0; t < 500; ++t) {
      Ordinal a = sampler.below(bound, rng), b = sampler.below(bound, rng), c = sampler.below(bound, rng);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(Ordinal::parse(a.str()) == a);
      const Ordinal& lo = a < b ? a : b;
      const Ordinal& hi = a < b ? b : a;
      REQUIRE(lo + left_subtract(lo, hi) == hi);
      REQUIRE(((a < b) + (b < a) + (a == b)) == 1);
      if (a.is_successor()) REQUIRE(a.predecessor() + Ordinal(1) == a);
    }
  }

  TEST_CASE("sampler stays below its bound") {
    std::mt19937_64 rng(3);
    OrdinalSampler sampler;
    for (const char* s : {"1", "5", "w", "w+1", "w*2", "w^(3)", "e0", "e2+w"}) {
      Ordinal bound = P(s);
      for (int t = 0; t < 200; ++t) REQUIRE(sampler.below(bound, rng) < bound);
    }
  }

  TEST_CASE("epsilon atoms are fixed points") {
    Ordinal e = P("e0");
    CHECK(omega_pow(e) == e);
    CHECK(P("w") + e == e);
    CHECK(P("w^(w)") * e == e);
    CHECK(P("e0") < P("e1"));
    CHECK_THROWS_AS(Ordinal::parse("e9"), Error);
  }
}
