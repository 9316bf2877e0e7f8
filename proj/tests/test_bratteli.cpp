#include <random>

#include "doctest.h"
#include "efk/bratteli.hpp"

using namespace efk;
using namespace efk::bratteli;

namespace {

Ordinal P(const char* s) { return Ordinal::parse(s); }

std::vector<Rational> to_q(const std::vector<Integer>& v) {
  std::vector<Rational> out;
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_SUITE("bratteli") {
  TEST_CASE("spot values") {
    CHECK(a_seq(1, 2) == std::vector<unsigned long>{3, 8, 18});
    CHECK(a_seq(2, 2) == std::vector<unsigned long>{4, 9, 19});
    LevelData l1 = level(1, 0);
    CHECK(l1.b_n == 120);
    CHECK(l1.B == QMatrix{{2520}});
    LevelData l2 = level(2, 0);
    CHECK(l2.b_n == 189);
    CHECK(l2.B == QMatrix{{6615, 945}, {945, 6615}});
  }

  TEST_CASE("closed-form inverse") {
    for (unsigned k = 1; k <= 4; ++k)
      for (unsigned long a : {3ul, 7ul, 20ul}) CHECK(matrix_A(k, a) * matrix_A_inverse(k, a) == QMatrix::identity(k));
  }

  TEST_CASE("factorials are exact") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(factorial(25) == Integer("15511210043330985984000000"));
  }

  TEST_CASE("preimages") {
    CHECK(preimage(2, 1, {0, 0}) == std::vector<Integer>{0, 0});
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
      unsigned k = 1 + i % 3;
      std::vector<Integer> x;
      for (unsigned j = 0; j < k; ++j) x.emplace_back(std::uniform_int_distribution<int>(-50, 50)(rng));
      std::vector<Integer> y = preimage(k, 1, x);
      std::vector<Rational> lhs = matrix_C(k, 2) * to_q(y);
      for (unsigned j = 0; j < k; ++j) CHECK(lhs[j] == Rational(x[j]) / Rational(factorial(a_at(k, 1))));
    }
  }

  TEST_CASE("positive preimages") {
    PositivePreimage p = positive_preimage(2, 0, {1, 1});
    CHECK(p.m == 0);
    for (const auto& v : p.y) CHECK(v > 0);
    // A lopsided target needs a deeper level.
    PositivePreimage q = positive_preimage(2, 0, {1, 100});
    CHECK(q.m >= 1);
    for (const auto& v : q.y) CHECK(v > 0);
    CHECK_THROWS_AS(positive_preimage(2, 0, {1, 0}), Error);
    CHECK_THROWS_AS(positive_preimage(2, 0, {1}), Error);
  }

  TEST_CASE("lifting rationals") {
    Lift l = lift_rational({Rational(1, 7), Rational(-2, 3)});
    CHECK(l.n >= 1);
    std::vector<Rational> img = matrix_C(2, l.n + 1) * to_q(l.y);
    CHECK(img == std::vector<Rational>{Rational(1, 7), Rational(-2, 3)});
  }

  TEST_CASE("duplication and refinement matrices") {
    CHECK(duplication_matrix(2) == QMatrix{{1, 0}, {0, 1}, {0, 1}});
    IntervalPartition coarse(P("w"), {P("w")}), fine(P("w"), {P("3"), P("w")});
    CHECK(refinement_matrix(coarse, fine) == QMatrix{{1}, {1}});
    CHECK_THROWS_AS(refinement_matrix(fine, coarse), Error);
  }

  TEST_CASE("stacked system over omega") {
    StackedSystem s = stack_omega(3);
    REQUIRE(s.E.size() == 2);
    CHECK(s.E[0].rows() == 2);
    CHECK(s.E[0].cols() == 1);
    for (const auto& e : s.E) {
      CHECK(e.is_integral());
      CHECK(e.all_positive());
    }
    for (std::size_t i = 1; i < s.n.size(); ++i) CHECK(s.n[i - 1] < s.n[i]);
  }

  TEST_CASE("partitions and fundamental sequences") {
    CHECK(fundamental_term(P("w"), 3) == P("3"));
    CHECK(fundamental_term(P("w^2"), 2) == P("w*2"));
    CHECK(fundamental_term(P("w*2"), 4) == P("w+4"));
    CHECK(fundamental_term(P("w^w"), 3) == P("w^3"));
    CHECK(partition_at(P("3"), 0).cells() == 4);
    // Successor spaces get an isolated top cell.
    IntervalPartition p = partition_at(P("w+1"), 2);
    CHECK(p.cell_of(P("w+1")) != p.cell_of(P("w")));
    // Refinement along the chain.
    for (const char* g : {"w", "w*2", "w^2"})
      for (unsigned n = 1; n < 4; ++n) CHECK_NOTHROW(refinement_matrix(partition_at(P(g), n - 1), partition_at(P(g), n)));
  }

  TEST_CASE("diagrams") {
    Diagram d = diagram_k(1, 2);
    REQUIRE(d.levels.size() == 3);
    CHECK(d.levels[0].edges[0][0] == 2520);
    CHECK(limit_diagram(P("w"), {}, 0).levels.empty());
    Diagram w = diagram_for(P("w+1"), 3);
    REQUIRE(w.levels.size() >= 3);
    for (std::size_t i = 1; i < w.levels.size(); ++i) CHECK(w.levels[i - 1].vertices <= w.levels[i].vertices);
    Diagram w2 = diagram_for(P("w*2+1"), 4);
    CHECK(w2.levels.size() == 4);
  }

  TEST_CASE("export formats") {
    Diagram empty{"empty", {}};
    std::string dot = export_diagram(empty, ExportFormat::Dot);
    CHECK(dot.find("digraph bratteli {") == 0);
    CHECK(dot.find("->") == std::string::npos);
    Diagram d = diagram_k(2, 2);
    CHECK(parse_diagram_json(export_diagram(d, ExportFormat::Json)) == d);
    CHECK(export_diagram(d, ExportFormat::Dot).find("[label=6615]") != std::string::npos);
    CHECK(parse_format("json") == ExportFormat::Json);
    CHECK_THROWS_AS(parse_format("svg"), Error);
    CHECK_THROWS_AS(parse_diagram_json("{\"levels\": 3}"), Error);
  }
}
