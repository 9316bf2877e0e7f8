#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "efk/efgame.hpp"
#include "efk/ordinal.hpp"
#include "efk/rational.hpp"

namespace efk {

// Clopen interval partition of the space beta+1, stored by the right
// endpoints of its cells: cell 0 is [0, ends[0]] and cell i is
// [ends[i-1]+1, ends[i]]. ends is strictly increasing and ends with beta;
// ends[0] may be 0, giving the isolated cell {0}.
class IntervalPartition {
 public:
  IntervalPartition() = default;
  IntervalPartition(Ordinal beta, std::vector<Ordinal> ends);
  static IntervalPartition trivial(const Ordinal& beta) { return IntervalPartition(beta, {beta}); }
  // Breakpoint form {0 = b_0 < b_1 < ... < b_k = beta}; b_1 = 0 is allowed.
  static IntervalPartition from_breakpoints(const std::vector<Ordinal>& breakpoints);

  const Ordinal& beta() const { return beta_; }
  const std::vector<Ordinal>& ends() const { return ends_; }
  std::vector<Ordinal> breakpoints() const;
  std::size_t cells() const { return ends_.size(); }
  Ordinal cell_start(std::size_t i) const;
  // Cell containing the point x <= beta.
  std::size_t cell_of(const Ordinal& x) const;
  bool refines(const IntervalPartition& coarser) const;

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;

 private:
  Ordinal beta_;
  std::vector<Ordinal> ends_{Ordinal()};
};

IntervalPartition common_refinement(const IntervalPartition& p, const IntervalPartition& q);

// Element of G_{beta+1}: a rational-valued function constant on the cells.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(IntervalPartition partition, std::vector<Rational> values);
  static StepFunction constant(const Ordinal& beta, const Rational& value);

  const IntervalPartition& partition() const { return partition_; }
  const std::vector<Rational>& values() const { return values_; }
  const Ordinal& beta() const { return partition_.beta(); }
  Rational at(const Ordinal& x) const { return values_[partition_.cell_of(x)]; }
  // Same function written on a finer partition.
  StepFunction on(const IntervalPartition& finer) const;
  // Adjacent equal values merged.
  StepFunction canonical() const;
  Rational min_value() const;
  Rational max_abs() const;
  std::string str() const;

  friend StepFunction operator+(const StepFunction& f, const StepFunction& g);
  friend StepFunction operator-(const StepFunction& f, const StepFunction& g);
  friend StepFunction operator*(const Rational& s, const StepFunction& f);
  // Pointwise equality, independent of the partitions used.
  friend bool operator==(const StepFunction& f, const StepFunction& g);

 private:
  IntervalPartition partition_;
  std::vector<Rational> values_{Rational(0)};
};

std::pair<StepFunction, StepFunction> refine(const StepFunction& f, const StepFunction& g);

enum class GroupOrder { Leq, LL };
const char* order_name(GroupOrder o);

// Leq: cellwise <=. LL: equal, or cellwise <.
bool compare(const StepFunction& f, const StepFunction& g, GroupOrder order);

// n with -n g << f << n g; g must be strictly positive on every cell.
Integer simplicity_witness(const StepFunction& g, const StepFunction& f);

// z with x_i <= z <= y_j in the chosen order; throws if the premise fails.
StepFunction riesz_interpolate(const StepFunction& x0, const StepFunction& x1, const StepFunction& y0,
                               const StepFunction& y1, GroupOrder order = GroupOrder::Leq);

// n f >= 0 implies f >= 0.
bool unperforation_check(const StepFunction& f, const Integer& n);

// Value transport between the step subgroups of two partitions with the
// same number of cells.
class PartitionIso {
 public:
  PartitionIso(IntervalPartition src, IntervalPartition dst);
  const IntervalPartition& src() const { return src_; }
  const IntervalPartition& dst() const { return dst_; }
  // f must be constant on the cells of src.
  StepFunction apply(const StepFunction& f) const;
  StepFunction inverse(const StepFunction& h) const;

 private:
  IntervalPartition src_, dst_;
};

PartitionIso partition_iso(const IntervalPartition& src, const IntervalPartition& dst);

struct GroupIsoCheck {
  Verdict verdict = Verdict::IWins;
  bool bounded = false;  // decided by the bounded enumeration fallback
  std::string reason;
};

using GroupPairs = std::vector<std::pair<StepFunction, StepFunction>>;

// Does g_i -> h_i, 1 -> 1 extend to an isomorphism of the generated
// ordered subgroups with order unit?
GroupIsoCheck check_partial_iso_group(const GroupPairs& pairs, GroupOrder order = GroupOrder::LL);

// Reference check by enumerating coefficient vectors in [-bound, bound].
Verdict naive_partial_iso_group(const GroupPairs& pairs, GroupOrder order, int bound = 3);

// G_{beta+1} as a structure for the EFD game.
struct DimGroup {
  Ordinal beta;
  GroupOrder order = GroupOrder::LL;
  bool contains(const StepFunction& f) const { return f.beta() == beta; }
};

bool induces_isomorphism(const DimGroup& a, const DimGroup& b, const GroupPairs& pairs);

}  // namespace efk
