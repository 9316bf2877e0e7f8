#include "efk/pigame.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>

namespace efk {

std::string Gaussian::str() const {
  if (im == 0) return to_string(re);
  std::string imag;
  Rational mag = abs_of(im);
  imag = mag == 1 ? "i" : to_string(mag) + "i";
  if (re == 0) return (im < 0 ? "-" : "") + imag;
  return to_string(re) + (im < 0 ? "-" : "+") + imag;
}

Gaussian Gaussian::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.empty()) throw ParseError("empty Gaussian rational", 0);
  if (s.back() != 'i') return Gaussian(parse_rational(s));
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size() - 1; k > 0; --k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = s.substr(split == std::string::npos ? 0 : split, s.size() - (split == std::string::npos ? 0 : split) - 1);
  Rational im;
  if (im_part.empty() || im_part == "+") im = 1;
  else if (im_part == "-") im = -1;
  else im = parse_rational(im_part[0] == '+' ? im_part.substr(1) : im_part);
  return Gaussian(re_part.empty() ? Rational(0) : parse_rational(re_part), im);
}

Rational sup_norm2(const Vec& v) {
  Rational best = 0;
  for (const auto& z : v) best = std::max(best, z.norm2());
  return best;
}

namespace {
void same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vectors have different dimensions");
}
template <class F>
Vec zip(const Vec& a, const Vec& b, F f) {
  same_dim(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return out;
}
}  // namespace

Rational distance2(const Vec& a, const Vec& b) { return sup_norm2(a - b); }
Vec conj(const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].conj();
  return out;
}
Vec operator+(const Vec& a, const Vec& b) { return zip(a, b, [](auto& x, auto& y) { return x + y; }); }
Vec operator-(const Vec& a, const Vec& b) { return zip(a, b, [](auto& x, auto& y) { return x - y; }); }
Vec operator*(const Vec& a, const Vec& b) { return zip(a, b, [](auto& x, auto& y) { return x * y; }); }
Vec scale(const Gaussian& c, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

std::string vec_str(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + ")";
}

std::vector<std::vector<std::size_t>> generated_partition(const std::vector<Vec>& generators, std::size_t dim) {
  for (const auto& g : generators)
    if (g.size() != dim) throw Error(ErrorCode::DimensionMismatch, "generator has the wrong dimension");
  std::map<std::vector<Gaussian>, std::size_t> index;
  std::vector<std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Gaussian> sig;
    for (const auto& g : generators) sig.push_back(g[i]);
    auto [it, fresh] = index.emplace(sig, cells.size());
    if (fresh) cells.emplace_back();
    cells[it->second].push_back(i);
  }
  return cells;
}

std::vector<std::pair<Vec, Vec>> PiPosition::pairs() const {
  std::vector<std::pair<Vec, Vec>> out;
  for (const auto& r : rounds_) out.emplace_back(r.a, r.b);
  return out;
}

PiPosition PiPosition::extended(PiRound r) const {
  PiPosition p = *this;
  p.rounds_.push_back(std::move(r));
  return p;
}

PiPending pi_step(const PiPosition& pos, PiMove move, const ToyAlgebra& a, const ToyAlgebra& b) {
  if (pos.over()) throw Error(ErrorCode::GameOver, "the clock has reached 0; the game is over");
  if (!(move.clock < pos.clock()))
    throw Error(ErrorCode::ClockNotDecreasing,
                "new clock " + move.clock.str() + " is not below " + pos.clock().str());
  if (move.eps <= 0) throw Error(ErrorCode::EpsNonPositive, "eps must be positive");
  const ToyAlgebra& side = move.side == Side::A ? a : b;
  if (!side.contains(move.probe))
    throw Error(ErrorCode::DimensionMismatch, std::string("probe does not live in side ") + side_name(move.side));
  return PiPending{pos, std::move(move)};
}

PiPosition pi_answer(const PiPending& pending, Vec a_elem, Vec b_elem, const ToyAlgebra& a, const ToyAlgebra& b) {
  if (!a.contains(a_elem) || !b.contains(b_elem))
    throw Error(ErrorCode::DimensionMismatch, "answer pair has the wrong dimensions");
  const PiMove& m = pending.move;
  const Vec& near = m.side == Side::A ? a_elem : b_elem;
  if (!(distance2(near, m.probe) < m.eps * m.eps))
    throw Error(ErrorCode::AnswerOutsideBall, "answer is not within eps of the probe");
  return pending.position.extended(PiRound{m.clock, m.side, m.probe, m.eps, std::move(a_elem), std::move(b_elem)});
}

PiWinCheck check_win_pi_detail(const std::vector<std::pair<Vec, Vec>>& pairs, const ToyAlgebra& a,
                               const ToyAlgebra& b) {
  std::vector<Vec> ga, gb;
  for (const auto& [x, y] : pairs) {
    ga.push_back(x);
    gb.push_back(y);
  }
  auto ca = generated_partition(ga, a.dim);
  auto cb = generated_partition(gb, b.dim);
  PiWinCheck out;
  if (ca.size() != cb.size()) return out;
  auto signature = [](const std::vector<Vec>& gens, std::size_t coord) {
    std::vector<Gaussian> sig;
    for (const auto& g : gens) sig.push_back(g[coord]);
    return sig;
  };
  std::map<std::vector<Gaussian>, std::size_t> in_b;
  for (std::size_t j = 0; j < cb.size(); ++j) in_b.emplace(signature(gb, cb[j].front()), j);
  for (const auto& cell : ca) {
    auto it = in_b.find(signature(ga, cell.front()));
    if (it == in_b.end()) {
      out.bijection.clear();
      return out;
    }
    out.bijection.push_back(it->second);
  }
  out.verdict = Verdict::IIWins;
  return out;
}

Verdict check_win_pi(const std::vector<std::pair<Vec, Vec>>& pairs, const ToyAlgebra& a, const ToyAlgebra& b) {
  return check_win_pi_detail(pairs, a, b).verdict;
}

Verdict check_win_pi(const PiPosition& pos, const ToyAlgebra& a, const ToyAlgebra& b) {
  if (!pos.over()) throw Error(ErrorCode::GameNotOver, "check_win requires the clock to have reached 0");
  return check_win_pi(pos.pairs(), a, b);
}

PiPlayerII echo_strategy(std::vector<std::size_t> permutation) {
  auto apply = [permutation](const Vec& v, bool inverse) {
    if (permutation.empty()) return v;
    if (permutation.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "permutation size mismatch");
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (inverse) out[i] = v[permutation[i]];
      else out[permutation[i]] = v[i];
    }
    return out;
  };
  return PiPlayerII{[apply](const PiPosition&, const PiMove& m) {
                      if (m.side == Side::A) return std::make_pair(m.probe, apply(m.probe, false));
                      return std::make_pair(apply(m.probe, true), m.probe);
                    },
                    Provenance::Identity};
}

PiPlayerI random_pi_player(const ToyAlgebra& a, const ToyAlgebra& b, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return PiPlayerI{[rng, a, b](const PiPosition& pos) {
                     const Ordinal& clock = pos.clock();
                     Ordinal next;
                     if (clock.is_finite()) {
                       next = Ordinal(static_cast<long long>(
                           std::uniform_int_distribution<std::uint64_t>(0, clock.to_u64() - 1)(*rng)));
                     } else {
                       next = OrdinalSampler{}.below(clock, *rng);
                     }
                     Side side = std::bernoulli_distribution(0.5)(*rng) ? Side::A : Side::B;
                     std::size_t dim = (side == Side::A ? a : b).dim;
                     std::uniform_int_distribution<int> entry(-2, 2);
                     Vec probe(dim);
                     std::vector<Gaussian> values;
                     for (int k = 0; k < 3; ++k) values.emplace_back(Rational(entry(*rng)), Rational(entry(*rng)));
                     std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
                     for (auto& z : probe) z = values[pick(*rng)];
                     Rational eps(std::uniform_int_distribution<int>(1, 8)(*rng), 4);
                     return PiMove{next, side, probe, eps};
                   },
                   Provenance::Random};
}

PiMatchResult play_pi_match(const ToyAlgebra& a, const ToyAlgebra& b, const Ordinal& clock, const PiPlayerI& one,
                            const PiPlayerII& two, std::size_t max_rounds) {
  PiMatchResult result{PiPosition(clock), Verdict::IIWins, std::nullopt};
  PiPosition& pos = result.position;
  while (!pos.over()) {
    std::size_t round = pos.size();
    if (round >= max_rounds) {
      result.illegal = IllegalPlay{round, "I", ErrorCode::SearchLimit, "round limit reached before the clock hit 0"};
      return result;
    }
    std::optional<PiPending> pending;
    try {
      pending = pi_step(pos, one.choose(pos), a, b);
    } catch (const Error& e) {
      result.illegal = IllegalPlay{round, "I", e.code(), e.what()};
      result.verdict = Verdict::IIWins;
      return result;
    }
    try {
      auto [x, y] = two.answer(pos, pending->move);
      pos = pi_answer(*pending, std::move(x), std::move(y), a, b);
    } catch (const Error& e) {
      result.illegal = IllegalPlay{round, "II", e.code(), e.what()};
      result.verdict = Verdict::IWins;
      return result;
    }
  }
  result.verdict = check_win_pi(pos, a, b);
  return result;
}

}  // namespace efk
