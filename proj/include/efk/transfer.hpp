#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "efk/dimgroup.hpp"
#include "efk/efgame.hpp"
#include "efk/linear_order.hpp"

namespace efk {

// One group round together with the auxiliary order rounds it triggered.
struct TransferStep {
  std::size_t group_round = 0;
  std::size_t first_aux = 0, aux_count = 0;  // slice of the auxiliary position
};

// Player II for EFD_alpha(G_{beta+1}, G_{gamma+1}) driven by a Player II
// for EFD_{w*alpha}(beta+1, gamma+1) on the underlying orders.
class TransferSession {
 public:
  TransferSession(Ordinal beta, Ordinal gamma, Ordinal alpha, PlayerII<Ordinal> order_strategy);

  // Feeds the breakpoints of the move into the auxiliary game and returns
  // the transported element. Throws Error(EngineForfeit) when the order
  // strategy answers illegally or breaks the order isomorphism.
  StepFunction answer(const Move<StepFunction>& move);

  const Ordinal& beta() const { return beta_; }
  const Ordinal& gamma() const { return gamma_; }
  const Position<Ordinal>& auxiliary() const { return aux_; }
  const std::vector<TransferStep>& steps() const { return steps_; }
  // The current iota as a map between the partitions of all played points.
  PartitionIso current_iso() const;

 private:
  Ordinal beta_, gamma_, alpha_;
  PlayerII<Ordinal> order_;
  OrdinalOrder left_, right_;
  Position<Ordinal> aux_;
  std::vector<TransferStep> steps_;
};

// Stateless wrapper: replays the group position through a fresh session.
PlayerII<StepFunction> transfer_strategy(PlayerII<Ordinal> order_strategy, const Ordinal& beta, const Ordinal& gamma);

// Rebuilds the session that produced `pos` (all rounds answered by the
// transferred strategy), so callers can inspect the auxiliary match.
TransferSession replay_transfer(const PlayerII<Ordinal>& order_strategy, const Ordinal& beta, const Ordinal& gamma,
                                const Position<StepFunction>& pos);

// Best-effort strategy for EFD_{delta}(beta+1, gamma+1) at any clock:
// repeated points reuse their answer, max goes to max, the identity is used
// when it is consistent, otherwise the offset above the lower neighbour is
// copied.
PlayerII<Ordinal> karp_order_strategy(const Ordinal& beta, const Ordinal& gamma);

// Seeded random Player I on G_{beta+1} vs G_{gamma+1}. Elements have 1 to
// `max_cells` cells with values in [-3, 3] and denominators up to 2. When
// `force_zero_at` is set, that round uses clock 0.
PlayerI<StepFunction> random_group_player(const Ordinal& beta, const Ordinal& gamma, std::uint64_t seed,
                                          std::size_t max_cells = 3, std::optional<std::size_t> force_zero_at = {});

// Random step function on beta+1 as used by random_group_player.
StepFunction random_step_function(const Ordinal& beta, std::mt19937_64& rng, std::size_t max_cells = 3);

struct TransferMatch {
  Position<StepFunction> position;
  Position<Ordinal> auxiliary;
  std::vector<TransferStep> steps;
  Verdict verdict = Verdict::IWins;
  std::optional<IllegalPlay> illegal;
  GroupIsoCheck final_check;
};

// Plays the transferred strategy against `one` and re-checks the final map.
TransferMatch play_transfer_match(const Ordinal& beta, const Ordinal& gamma, const Ordinal& alpha,
                                  const PlayerI<StepFunction>& one, const PlayerII<Ordinal>& order_strategy,
                                  GroupOrder order = GroupOrder::LL);

// EFD_{e_a} on G_{e_a+1} vs G_{e_b+1}: transferred order strategy against a
// seeded random Player I for at most `rounds` rounds.
TransferMatch demo_pipeline(int eps_a, int eps_b, const PlayerII<Ordinal>& order_strategy, std::size_t rounds,
                            std::uint64_t seed);

}  // namespace efk
