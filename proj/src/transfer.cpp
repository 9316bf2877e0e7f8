#include "efk/transfer.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace efk {

TransferSession::TransferSession(Ordinal beta, Ordinal gamma, Ordinal alpha, PlayerII<Ordinal> order_strategy)
    : beta_(std::move(beta)),
      gamma_(std::move(gamma)),
      alpha_(std::move(alpha)),
      order_(std::move(order_strategy)),
      left_{beta_ + Ordinal(1)},
      right_{gamma_ + Ordinal(1)},
      aux_(Ordinal::omega() * alpha_) {}

namespace {

std::vector<Ordinal> sorted_unique(std::vector<Ordinal> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

PartitionIso TransferSession::current_iso() const {
  std::vector<std::pair<Ordinal, Ordinal>> pairs = aux_.pairs();
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<Ordinal> src, dst;
  for (auto& [x, y] : pairs) {
    src.push_back(x);
    dst.push_back(y);
  }
  if (src.empty()) return PartitionIso(IntervalPartition::trivial(beta_), IntervalPartition::trivial(gamma_));
  if (src.back() != beta_ || dst.back() != gamma_)
    throw Error(ErrorCode::EngineForfeit, "order strategy does not match the maxima " + beta_.str() + " and " + gamma_.str());
  return PartitionIso(IntervalPartition(beta_, src), IntervalPartition(gamma_, dst));
}

StepFunction TransferSession::answer(const Move<StepFunction>& move) {
  const Ordinal& top = move.side == Side::A ? beta_ : gamma_;
  if (move.element.beta() != top)
    throw Error(ErrorCode::ElementNotInStructure, "element lives over the wrong ordinal");
  std::vector<Ordinal> bps{Ordinal()};
  StepFunction minimal = move.element.canonical();
  for (const auto& e : minimal.partition().ends()) bps.push_back(e);
  bps = sorted_unique(std::move(bps));
  const std::size_t m = bps.size() - 1;
  TransferStep step{steps_.size(), aux_.size(), bps.size()};
  Ordinal base = Ordinal::omega() * move.clock;
  for (std::size_t j = 0; j <= m; ++j) {
    Move<Ordinal> aux_move{base + Ordinal(static_cast<long long>(m - j)), move.side, bps[j]};
    Pending<Ordinal> pending;
    try {
      pending = efd_step(aux_, aux_move, left_, right_);
    } catch (const Error& e) {
      throw Error(ErrorCode::EngineForfeit, std::string("auxiliary move rejected: ") + e.what());
    }
    Ordinal reply = order_.answer(aux_, aux_move);
    try {
      aux_ = efd_answer(pending, reply, left_, right_);
    } catch (const Error& e) {
      throw Error(ErrorCode::EngineForfeit, std::string("order strategy answered illegally: ") + e.what());
    }
  }
  if (!induces_isomorphism(left_, right_, aux_.pairs()))
    throw Error(ErrorCode::EngineForfeit, "order strategy broke the partial order isomorphism");
  steps_.push_back(step);
  PartitionIso iota = current_iso();
  return move.side == Side::A ? iota.apply(move.element).canonical() : iota.inverse(move.element).canonical();
}

PlayerII<StepFunction> transfer_strategy(PlayerII<Ordinal> order_strategy, const Ordinal& beta, const Ordinal& gamma) {
  return PlayerII<StepFunction>{
      [order_strategy, beta, gamma](const Position<StepFunction>& pos, const Move<StepFunction>& move) {
        TransferSession s = replay_transfer(order_strategy, beta, gamma, pos);
        return s.answer(move);
      },
      Provenance::Transferred};
}

TransferSession replay_transfer(const PlayerII<Ordinal>& order_strategy, const Ordinal& beta, const Ordinal& gamma,
                                const Position<StepFunction>& pos) {
  TransferSession s(beta, gamma, pos.initial_clock(), order_strategy);
  for (const auto& r : pos.rounds()) s.answer(Move<StepFunction>{r.clock, r.side, r.move});
  return s;
}

PlayerII<Ordinal> karp_order_strategy(const Ordinal& beta, const Ordinal& gamma) {
  return PlayerII<Ordinal>{
      [beta, gamma](const Position<Ordinal>& pos, const Move<Ordinal>& move) -> Ordinal {
        const bool from_a = move.side == Side::A;
        const Ordinal& my_max = from_a ? beta : gamma;
        const Ordinal& their_max = from_a ? gamma : beta;
        const Ordinal& x = move.element;
        std::vector<std::pair<Ordinal, Ordinal>> pairs;  // (mine, theirs)
        for (const auto& r : pos.rounds()) pairs.emplace_back(from_a ? r.a() : r.b(), from_a ? r.b() : r.a());
        for (const auto& [p, q] : pairs)
          if (p == x) return q;
        if (x == my_max) return their_max;
        std::optional<std::pair<Ordinal, Ordinal>> lo, hi;
        for (const auto& pq : pairs) {
          if (pq.first < x && (!lo || lo->first < pq.first)) lo = pq;
          if (x < pq.first && (!hi || pq.first < hi->first)) hi = pq;
        }
        auto fits = [&](const Ordinal& y) {
          if (their_max < y) return false;
          if (lo && !(lo->second < y)) return false;
          if (hi && !(y < hi->second)) return false;
          if (!hi && y == their_max) return false;  // the max is reserved for the max
          return true;
        };
        if (fits(x)) return x;
        if (lo) {
          Ordinal copied = lo->second + Ordinal(1) + left_subtract(lo->first + Ordinal(1), x);
          if (fits(copied)) return copied;
          Ordinal next = lo->second + Ordinal(1);
          if (fits(next)) return next;
        }
        return lo ? lo->second + Ordinal(1) : Ordinal();
      },
      Provenance::KarpFamily};
}

StepFunction random_step_function(const Ordinal& beta, std::mt19937_64& rng, std::size_t max_cells) {
  std::size_t cells = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_cells))(rng);
  std::vector<Ordinal> ends;
  if (!beta.is_zero()) {
    OrdinalSampler sampler;
    for (std::size_t i = 1; i < cells; ++i) {
      if (std::bernoulli_distribution(0.15)(rng)) ends.push_back(Ordinal());
      else ends.push_back(sampler.below(beta, rng));
    }
  }
  ends.push_back(beta);
  ends = sorted_unique(std::move(ends));
  std::vector<Rational> vals;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    Rational v(std::uniform_int_distribution<int>(-6, 6)(rng), 2);
    v.canonicalize();
    vals.push_back(v);
  }
  return StepFunction(IntervalPartition(beta, ends), vals);
}

PlayerI<StepFunction> random_group_player(const Ordinal& beta, const Ordinal& gamma, std::uint64_t seed,
                                          std::size_t max_cells, std::optional<std::size_t> force_zero_at) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return PlayerI<StepFunction>{
      [rng, beta, gamma, max_cells, force_zero_at](const Position<StepFunction>& pos) {
        const Ordinal& clock = pos.clock();
        Ordinal next;
        if (force_zero_at && pos.size() >= *force_zero_at) {
          next = Ordinal();
        } else if (clock.is_finite()) {
          next = Ordinal(static_cast<long long>(
              std::uniform_int_distribution<std::uint64_t>(0, clock.to_u64() - 1)(*rng)));
        } else {
          next = OrdinalSampler{}.below(clock, *rng);
        }
        Side side = std::bernoulli_distribution(0.5)(*rng) ? Side::A : Side::B;
        return Move<StepFunction>{next, side, random_step_function(side == Side::A ? beta : gamma, *rng, max_cells)};
      },
      Provenance::Random};
}

TransferMatch play_transfer_match(const Ordinal& beta, const Ordinal& gamma, const Ordinal& alpha,
                                  const PlayerI<StepFunction>& one, const PlayerII<Ordinal>& order_strategy,
                                  GroupOrder order) {
  DimGroup ga{beta, order}, gb{gamma, order};
  auto session = std::make_shared<TransferSession>(beta, gamma, alpha, order_strategy);
  PlayerII<StepFunction> two{[session](const Position<StepFunction>&, const Move<StepFunction>& m) {
                               return session->answer(m);
                             },
                             Provenance::Transferred};
  MatchResult<StepFunction> r = play_match(ga, gb, alpha, one, two);
  TransferMatch out;
  out.position = r.position;
  out.auxiliary = session->auxiliary();
  out.steps = session->steps();
  out.verdict = r.verdict;
  out.illegal = r.illegal;
  out.final_check = check_partial_iso_group(r.position.pairs(), order);
  return out;
}

TransferMatch demo_pipeline(int eps_a, int eps_b, const PlayerII<Ordinal>& order_strategy, std::size_t rounds,
                            std::uint64_t seed) {
  if (eps_a > eps_b) throw Error(ErrorCode::InvalidArgument, "demo expects eps_a <= eps_b");
  if (rounds == 0) throw Error(ErrorCode::InvalidArgument, "demo needs at least one round");
  Ordinal a = Ordinal::epsilon(eps_a), b = Ordinal::epsilon(eps_b);
  return play_transfer_match(a, b, a, random_group_player(a, b, seed, 3, rounds - 1), order_strategy);
}

}  // namespace efk
