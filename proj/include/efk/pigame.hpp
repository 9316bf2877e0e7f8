#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efk/efgame.hpp"
#include "efk/rational.hpp"

namespace efk {

struct Gaussian {
  Rational re, im;

  Gaussian() = default;
  Gaussian(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  Gaussian conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  std::string str() const;
  static Gaussian parse(const std::string& text);

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator<(const Gaussian& a, const Gaussian& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  }
};

using Vec = std::vector<Gaussian>;

// C^n with componentwise operations and the sup norm.
struct ToyAlgebra {
  std::size_t dim = 1;

  bool contains(const Vec& v) const { return v.size() == dim; }
  Vec unit() const { return Vec(dim, Gaussian(1)); }
};

Rational sup_norm2(const Vec& v);
Rational distance2(const Vec& a, const Vec& b);
Vec conj(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Vec& a, const Vec& b);
Vec scale(const Gaussian& c, const Vec& v);
std::string vec_str(const Vec& v);

// Coordinates grouped by equal values across all generators; cells are
// listed by their least coordinate.
std::vector<std::vector<std::size_t>> generated_partition(const std::vector<Vec>& generators, std::size_t dim);

struct PiRound {
  Ordinal clock;
  Side side = Side::A;  // side the probe was taken from
  Vec probe;
  Rational eps;
  Vec a, b;
};

class PiPosition {
 public:
  explicit PiPosition(Ordinal initial_clock = Ordinal()) : initial_(std::move(initial_clock)) {}
  const Ordinal& initial_clock() const { return initial_; }
  const Ordinal& clock() const { return rounds_.empty() ? initial_ : rounds_.back().clock; }
  bool over() const { return clock().is_zero(); }
  const std::vector<PiRound>& rounds() const { return rounds_; }
  std::size_t size() const { return rounds_.size(); }
  std::vector<std::pair<Vec, Vec>> pairs() const;
  PiPosition extended(PiRound r) const;

 private:
  Ordinal initial_;
  std::vector<PiRound> rounds_;
};

struct PiMove {
  Ordinal clock;
  Side side = Side::A;
  Vec probe;
  Rational eps;
};

struct PiPending {
  PiPosition position;
  PiMove move;
};

PiPending pi_step(const PiPosition& pos, PiMove move, const ToyAlgebra& a, const ToyAlgebra& b);
PiPosition pi_answer(const PiPending& pending, Vec a_elem, Vec b_elem, const ToyAlgebra& a, const ToyAlgebra& b);

struct PiWinCheck {
  Verdict verdict = Verdict::IWins;
  // For II wins: cell i of A's partition corresponds to cell bijection[i] of B's.
  std::vector<std::size_t> bijection;
};

PiWinCheck check_win_pi_detail(const std::vector<std::pair<Vec, Vec>>& pairs, const ToyAlgebra& a,
                               const ToyAlgebra& b);
Verdict check_win_pi(const std::vector<std::pair<Vec, Vec>>& pairs, const ToyAlgebra& a, const ToyAlgebra& b);
// Requires the clock to have reached 0.
Verdict check_win_pi(const PiPosition& pos, const ToyAlgebra& a, const ToyAlgebra& b);

struct PiPlayerI {
  std::function<PiMove(const PiPosition&)> choose;
  Provenance provenance = Provenance::Human;
};
struct PiPlayerII {
  std::function<std::pair<Vec, Vec>(const PiPosition&, const PiMove&)> answer;
  Provenance provenance = Provenance::Human;
};

// Plays the probe itself and its image under the coordinate permutation
// (identity when empty) on the other side. Only meaningful for A = B.
PiPlayerII echo_strategy(std::vector<std::size_t> permutation = {});

// Seeded random probes with small Gaussian-integer entries drawn from a
// palette, so repeated values (and nontrivial partitions) are common.
PiPlayerI random_pi_player(const ToyAlgebra& a, const ToyAlgebra& b, std::uint64_t seed);

struct PiMatchResult {
  PiPosition position;
  Verdict verdict = Verdict::IIWins;
  std::optional<IllegalPlay> illegal;
};

PiMatchResult play_pi_match(const ToyAlgebra& a, const ToyAlgebra& b, const Ordinal& clock, const PiPlayerI& one,
                            const PiPlayerII& two, std::size_t max_rounds = 1000);

}  // namespace efk
