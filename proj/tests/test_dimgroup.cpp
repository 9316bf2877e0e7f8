#include <algorithm>
#include <random>

#include "doctest.h"
#include "efk/dimgroup.hpp"

using namespace efk;

namespace {

Ordinal P(const char* s) { return Ordinal::parse(s); }

// Points where any of the given functions can change value: every cell
// start and end. Comparing values there is an independent pointwise check.
std::vector<Ordinal> sample_points(std::initializer_list<const StepFunction*> fs) {
  std::vector<Ordinal> pts;
  for (auto* f : fs)
    for (std::size_t i = 0; i < f->partition().cells(); ++i) {
      pts.push_back(f->partition().cell_start(i));
      pts.push_back(f->partition().ends()[i]);
    }
  return pts;
}

bool pointwise(const StepFunction& f, const StepFunction& g, bool strict) {
  for (const auto& x : sample_points({&f, &g}))
    if (strict ? !(f.at(x) < g.at(x)) : !(f.at(x) <= g.at(x))) return false;
  return true;
}

bool oracle_leq(const StepFunction& f, const StepFunction& g, GroupOrder o) {
  if (o == GroupOrder::Leq) return pointwise(f, g, false);
  return f == g || pointwise(f, g, true);
}

// Random partition of beta+1 with ends drawn from a fixed pool below beta.
IntervalPartition random_partition(const Ordinal& beta, std::mt19937_64& rng, std::size_t max_cells) {
  std::vector<Ordinal> pool{P("0"), P("1"), P("2"), P("5"), P("w"), P("w+1"), P("w+3"), P("w*2"), P("w*2+1")};
  std::vector<Ordinal> ends;
  for (const auto& p : pool)
    if (p < beta && std::bernoulli_distribution(0.35)(rng)) ends.push_back(p);
  std::shuffle(ends.begin(), ends.end(), rng);
  ends.resize(std::min(ends.size(), max_cells - 1));
  std::sort(ends.begin(), ends.end());
  ends.push_back(beta);
  return IntervalPartition(beta, ends);
}

StepFunction random_step(const Ordinal& beta, std::mt19937_64& rng, std::size_t max_cells = 4, int lo = -3, int hi = 3) {
  IntervalPartition p = random_partition(beta, rng, max_cells);
  std::vector<Rational> vals;
  for (std::size_t i = 0; i < p.cells(); ++i) vals.emplace_back(std::uniform_int_distribution<int>(lo, hi)(rng));
  return StepFunction(p, vals);
}

StepFunction positive_step(const Ordinal& beta, std::mt19937_64& rng) {
  StepFunction f = random_step(beta, rng, 4, 1, 4);
  std::vector<Rational> v = f.values();
  for (auto& x : v) x /= std::uniform_int_distribution<int>(1, 3)(rng);
  return StepFunction(f.partition(), v);
}

}  // namespace

TEST_SUITE("dimgroup") {
  TEST_CASE("partitions validate their ends") {
    CHECK_THROWS_AS(IntervalPartition(P("w"), {P("3"), P("2"), P("w")}), Error);
    CHECK_THROWS_AS(IntervalPartition(P("w"), {P("3")}), Error);
    IntervalPartition p(P("w+1"), {P("0"), P("w"), P("w+1")});
    CHECK(p.cells() == 3);
    CHECK(p.cell_of(P("0")) == 0);
    CHECK(p.cell_of(P("7")) == 1);
    CHECK(p.cell_of(P("w+1")) == 2);
    CHECK(p.cell_start(1) == P("1"));
    CHECK(p.breakpoints() == std::vector<Ordinal>{P("0"), P("0"), P("w"), P("w+1")});
    CHECK(IntervalPartition::from_breakpoints(p.breakpoints()) == p);
    CHECK(p.refines(IntervalPartition::trivial(P("w+1"))));
    CHECK_FALSE(IntervalPartition::trivial(P("w+1")).refines(p));
  }

  TEST_CASE("step function arithmetic is pointwise") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 300; ++t) {
      StepFunction f = random_step(P("w*2+1"), rng), g = random_step(P("w*2+1"), rng);
      StepFunction s = f + g, d = f - g, m = Rational(3, 2) * f;
      for (const auto& x : sample_points({&f, &g})) {
        REQUIRE(s.at(x) == f.at(x) + g.at(x));
        REQUIRE(d.at(x) == f.at(x) - g.at(x));
        REQUIRE(m.at(x) == Rational(3, 2) * f.at(x));
      }
      REQUIRE(f.canonical() == f);
      for (std::size_t i = 1; i < f.canonical().values().size(); ++i)
        REQUIRE(f.canonical().values()[i] != f.canonical().values()[i - 1]);
    }
  }

  TEST_CASE("orders agree with the pointwise oracle") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 1000; ++t) {
      StepFunction f = random_step(P("w+3"), rng, 3, -1, 1), g = random_step(P("w+3"), rng, 3, -1, 1);
      for (GroupOrder o : {GroupOrder::Leq, GroupOrder::LL}) REQUIRE(compare(f, g, o) == oracle_leq(f, g, o));
      if (compare(f, g, GroupOrder::LL)) REQUIRE(compare(f, g, GroupOrder::Leq));
    }
  }

  TEST_CASE("simplicity witness sandwiches f") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
      StepFunction g = positive_step(P("w*2+1"), rng), f = random_step(P("w*2+1"), rng, 4, -9, 9);
      Integer n = simplicity_witness(g, f);
      StepFunction ng = Rational(n) * g;
      REQUIRE(pointwise(Rational(-1) * ng, f, true));
      REQUIRE(pointwise(f, ng, true));
    }
    CHECK_THROWS_AS(simplicity_witness(StepFunction::constant(P("w"), 0), StepFunction::constant(P("w"), 1)), Error);
  }

  TEST_CASE("Riesz interpolation meets its postcondition") {
    std::mt19937_64 rng(4);
    for (GroupOrder o : {GroupOrder::Leq, GroupOrder::LL}) {
      for (int t = 0; t < 500; ++t) {
        const Ordinal beta = P("w+3");
        StepFunction x0 = random_step(beta, rng), x1 = random_step(beta, rng);
        StepFunction top = x0 + x1 + StepFunction::constant(beta, 7);
        StepFunction y0 = top + positive_step(beta, rng), y1 = top + positive_step(beta, rng);
        if (o == GroupOrder::LL && std::bernoulli_distribution(0.2)(rng)) y1 = x1 = x0;
        StepFunction z = riesz_interpolate(x0, x1, y0, y1, o);
        for (const auto* x : {&x0, &x1}) REQUIRE(oracle_leq(*x, z, o));
        for (const auto* y : {&y0, &y1}) REQUIRE(oracle_leq(z, *y, o));
      }
    }
    StepFunction one = StepFunction::constant(P("w"), 1), zero = StepFunction::constant(P("w"), 0);
    CHECK_THROWS_AS(riesz_interpolate(one, zero, zero, one), Error);
  }

  TEST_CASE("groups of step functions are unperforated") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) CHECK(unperforation_check(random_step(P("w+1"), rng), Integer(3)));
  }

  TEST_CASE("partition isomorphisms transport values cell by cell") {
    IntervalPartition src(P("w+1"), {P("2"), P("w+1")}), dst(P("w*2"), {P("w"), P("w*2")});
    PartitionIso iso = partition_iso(src, dst);
    StepFunction f(src, {Rational(1), Rational(-2)});
    StepFunction h = iso.apply(f);
    CHECK(h.at(P("5")) == 1);
    CHECK(h.at(P("w+4")) == -2);
    CHECK(iso.inverse(h) == f);
    CHECK_THROWS_AS(iso.apply(StepFunction(IntervalPartition(P("w+1"), {P("0"), P("w+1")}), {Rational(0), Rational(1)})),
                    Error);
  }

  TEST_CASE("partial isomorphism check on hand-made instances") {
    const Ordinal b = P("w+1");
    IntervalPartition two(b, {P("3"), b});
    StepFunction g(two, {Rational(1), Rational(2)});
    StepFunction swapped(two, {Rational(2), Rational(1)});
    CHECK(check_partial_iso_group({{g, swapped}}).verdict == Verdict::IIWins);
    CHECK(check_partial_iso_group({{g, StepFunction::constant(b, 1)}}).verdict == Verdict::IWins);
    StepFunction neg(two, {Rational(-1), Rational(1)});
    // -1 on a cell: positive under neither order, mapped to a positive one.
    CHECK(check_partial_iso_group({{neg, StepFunction(two, {Rational(1), Rational(1, 2)})}}).verdict == Verdict::IWins);
    // Under Leq, 2g - 1 >= 0 holds on one side only.
    StepFunction half(two, {Rational(0), Rational(1)}), below(two, {Rational(1, 2), Rational(1)});
    CHECK(check_partial_iso_group({{half, below}}, GroupOrder::Leq).verdict == Verdict::IWins);
  }

  TEST_CASE("partial isomorphism check agrees with the naive oracle") {
    std::mt19937_64 rng(6);
    std::size_t ii = 0;
    for (int t = 0; t < 600; ++t) {
      GroupPairs pairs;
      const Ordinal ba = P("w*2+1"), bb = P("w+3");
      int gens = std::uniform_int_distribution<int>(1, 3)(rng);
      bool mirror = std::bernoulli_distribution(0.5)(rng);
      IntervalPartition pa = random_partition(ba, rng, 3), pb = random_partition(bb, rng, 3);
      std::vector<std::size_t> perm(pa.cells());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (int k = 0; k < gens; ++k) {
        std::vector<Rational> va, vb;
        for (std::size_t i = 0; i < pa.cells(); ++i) va.emplace_back(std::uniform_int_distribution<int>(-3, 3)(rng));
        if (mirror && pb.cells() >= pa.cells()) {
          // Cells of B copy cells of A in permuted order, padding by repetition.
          for (std::size_t j = 0; j < pb.cells(); ++j) vb.push_back(va[perm[j % perm.size()]]);
        } else {
          for (std::size_t j = 0; j < pb.cells(); ++j) vb.emplace_back(std::uniform_int_distribution<int>(-3, 3)(rng));
        }
        pairs.emplace_back(StepFunction(pa, va), StepFunction(pb, vb));
      }
      for (GroupOrder o : {GroupOrder::Leq, GroupOrder::LL}) {
        auto fast = check_partial_iso_group(pairs, o);
        Verdict slow = naive_partial_iso_group(pairs, o);
        INFO("instance " << t);
        REQUIRE(fast.verdict == slow);
        ii += fast.verdict == Verdict::IIWins;
      }
    }
    CHECK(ii > 100);
  }
}
