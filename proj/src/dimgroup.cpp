#include "efk/dimgroup.hpp"

#include <algorithm>
#include <functional>

#include "efk/fourier_motzkin.hpp"
#include "efk/matrix.hpp"

namespace efk {

IntervalPartition::IntervalPartition(Ordinal beta, std::vector<Ordinal> ends)
    : beta_(std::move(beta)), ends_(std::move(ends)) {
  if (ends_.empty() || ends_.back() != beta_)
    throw Error(ErrorCode::InvalidArgument, "partition must end at the ambient ordinal " + beta_.str());
  for (std::size_t i = 1; i < ends_.size(); ++i)
    if (!(ends_[i - 1] < ends_[i])) throw Error(ErrorCode::InvalidArgument, "partition ends must strictly increase");
}

IntervalPartition IntervalPartition::from_breakpoints(const std::vector<Ordinal>& bps) {
  if (bps.size() < 2 || !bps.front().is_zero())
    throw Error(ErrorCode::InvalidArgument, "breakpoints must start with 0 and name at least one cell");
  return IntervalPartition(bps.back(), std::vector<Ordinal>(bps.begin() + 1, bps.end()));
}

std::vector<Ordinal> IntervalPartition::breakpoints() const {
  std::vector<Ordinal> out{Ordinal()};
  out.insert(out.end(), ends_.begin(), ends_.end());
  return out;
}

Ordinal IntervalPartition::cell_start(std::size_t i) const { return i == 0 ? Ordinal() : ends_[i - 1] + Ordinal(1); }

std::size_t IntervalPartition::cell_of(const Ordinal& x) const {
  auto it = std::lower_bound(ends_.begin(), ends_.end(), x);
  if (it == ends_.end()) throw Error(ErrorCode::ElementNotInStructure, x.str() + " lies outside the space");
  return static_cast<std::size_t>(it - ends_.begin());
}

bool IntervalPartition::refines(const IntervalPartition& coarser) const {
  if (beta_ != coarser.beta_) return false;
  return std::includes(ends_.begin(), ends_.end(), coarser.ends_.begin(), coarser.ends_.end());
}

IntervalPartition common_refinement(const IntervalPartition& p, const IntervalPartition& q) {
  if (p.beta() != q.beta())
    throw Error(ErrorCode::InvalidArgument, "ambient mismatch: " + p.beta().str() + " vs " + q.beta().str());
  std::vector<Ordinal> ends;
  std::set_union(p.ends().begin(), p.ends().end(), q.ends().begin(), q.ends().end(), std::back_inserter(ends));
  return IntervalPartition(p.beta(), std::move(ends));
}

StepFunction::StepFunction(IntervalPartition partition, std::vector<Rational> values)
    : partition_(std::move(partition)), values_(std::move(values)) {
  if (values_.size() != partition_.cells())
    throw Error(ErrorCode::InvalidArgument, "need one value per cell");
}

StepFunction StepFunction::constant(const Ordinal& beta, const Rational& value) {
  return StepFunction(IntervalPartition::trivial(beta), {value});
}

StepFunction StepFunction::on(const IntervalPartition& finer) const {
  if (!finer.refines(partition_)) throw Error(ErrorCode::InvalidArgument, "target partition does not refine");
  std::vector<Rational> vals;
  vals.reserve(finer.cells());
  for (const auto& e : finer.ends()) vals.push_back(at(e));
  return StepFunction(finer, std::move(vals));
}

StepFunction StepFunction::canonical() const {
  std::vector<Ordinal> ends;
  std::vector<Rational> vals;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!vals.empty() && vals.back() == values_[i]) {
      ends.back() = partition_.ends()[i];
    } else {
      ends.push_back(partition_.ends()[i]);
      vals.push_back(values_[i]);
    }
  }
  return StepFunction(IntervalPartition(beta(), std::move(ends)), std::move(vals));
}

Rational StepFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

Rational StepFunction::max_abs() const {
  Rational m = 0;
  for (const auto& v : values_) m = std::max(m, abs_of(v));
  return m;
}

std::string StepFunction::str() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ", ";
    out += "[" + partition_.cell_start(i).str() + ".." + partition_.ends()[i].str() + "]=" + to_string(values_[i]);
  }
  return out;
}

namespace {
StepFunction zip(const StepFunction& f, const StepFunction& g, const std::function<Rational(const Rational&, const Rational&)>& op) {
  auto [a, b] = refine(f, g);
  std::vector<Rational> vals(a.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = op(a.values()[i], b.values()[i]);
  return StepFunction(a.partition(), std::move(vals));
}
}  // namespace

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  return zip(f, g, [](const Rational& x, const Rational& y) { return Rational(x + y); });
}
StepFunction operator-(const StepFunction& f, const StepFunction& g) {
  return zip(f, g, [](const Rational& x, const Rational& y) { return Rational(x - y); });
}
StepFunction operator*(const Rational& s, const StepFunction& f) {
  std::vector<Rational> vals = f.values();
  for (auto& v : vals) v *= s;
  return StepFunction(f.partition(), std::move(vals));
}
bool operator==(const StepFunction& f, const StepFunction& g) {
  if (f.beta() != g.beta()) return false;
  auto [a, b] = refine(f, g);
  return a.values() == b.values();
}

std::pair<StepFunction, StepFunction> refine(const StepFunction& f, const StepFunction& g) {
  IntervalPartition common = common_refinement(f.partition(), g.partition());
  return {f.on(common), g.on(common)};
}

const char* order_name(GroupOrder o) { return o == GroupOrder::Leq ? "leq" : "ll"; }

bool compare(const StepFunction& f, const StepFunction& g, GroupOrder order) {
  auto [a, b] = refine(f, g);
  const auto& x = a.values();
  const auto& y = b.values();
  if (order == GroupOrder::Leq) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  }
  if (x == y) return true;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] < y[i])) return false;
  return true;
}

Integer simplicity_witness(const StepFunction& g, const StepFunction& f) {
  if (g.beta() != f.beta()) throw Error(ErrorCode::InvalidArgument, "ambient mismatch");
  Rational eps = g.min_value();
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "g must be strictly positive on every cell");
  Integer n = floor_of(f.max_abs() / eps) + 1;
  StepFunction ng = Rational(n) * g;
  if (!compare(Rational(-1) * ng, f, GroupOrder::LL) || !compare(f, ng, GroupOrder::LL))
    throw Error(ErrorCode::Internal, "simplicity sandwich failed to verify");
  return n;
}

StepFunction riesz_interpolate(const StepFunction& x0, const StepFunction& x1, const StepFunction& y0,
                               const StepFunction& y1, GroupOrder order) {
  const StepFunction* xs[] = {&x0, &x1};
  const StepFunction* ys[] = {&y0, &y1};
  for (auto* x : xs)
    for (auto* y : ys)
      if (!compare(*x, *y, order))
        throw Error(ErrorCode::InvalidArgument, "interpolation premise x_i <= y_j fails");
  StepFunction z;
  auto [lo0, lo1] = refine(x0, x1);
  std::vector<Rational> mx(lo0.values().size());
  for (std::size_t i = 0; i < mx.size(); ++i) mx[i] = std::max(lo0.values()[i], lo1.values()[i]);
  StepFunction top(lo0.partition(), mx);
  if (order == GroupOrder::Leq) {
    z = top;
  } else {
    // Under << an equality x_i = y_j forces z; otherwise every cell has
    // max(x) < min(y) and the midpoint is strictly between.
    std::optional<StepFunction> forced;
    for (auto* x : xs)
      for (auto* y : ys)
        if (!forced && *x == *y) forced = *x;
    if (forced) {
      z = *forced;
    } else {
      auto [hi0, hi1] = refine(y0, y1);
      std::vector<Rational> mn(hi0.values().size());
      for (std::size_t i = 0; i < mn.size(); ++i) mn[i] = std::min(hi0.values()[i], hi1.values()[i]);
      StepFunction bottom(hi0.partition(), mn);
      z = Rational(1, 2) * (top + bottom);
    }
  }
  z = z.canonical();
  for (auto* x : xs)
    if (!compare(*x, z, order)) throw Error(ErrorCode::Internal, "interpolant below a lower bound");
  for (auto* y : ys)
    if (!compare(z, *y, order)) throw Error(ErrorCode::Internal, "interpolant above an upper bound");
  return z;
}

bool unperforation_check(const StepFunction& f, const Integer& n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  StepFunction zero = StepFunction::constant(f.beta(), 0);
  return !compare(zero, Rational(n) * f, GroupOrder::Leq) || compare(zero, f, GroupOrder::Leq);
}

PartitionIso::PartitionIso(IntervalPartition src, IntervalPartition dst) : src_(std::move(src)), dst_(std::move(dst)) {
  if (src_.cells() != dst_.cells())
    throw Error(ErrorCode::InvalidArgument, "partitions have different numbers of cells");
}

StepFunction PartitionIso::apply(const StepFunction& f) const {
  if (!(f.beta() == src_.beta() && src_.refines(f.canonical().partition())))
    throw Error(ErrorCode::InvalidArgument, "function is not constant on the source cells");
  return StepFunction(dst_, f.canonical().on(src_).values());
}

StepFunction PartitionIso::inverse(const StepFunction& h) const {
  if (!(h.beta() == dst_.beta() && dst_.refines(h.canonical().partition())))
    throw Error(ErrorCode::InvalidArgument, "function is not constant on the target cells");
  return StepFunction(src_, h.canonical().on(dst_).values());
}

PartitionIso partition_iso(const IntervalPartition& src, const IntervalPartition& dst) { return PartitionIso(src, dst); }

namespace {

// Rows: cells of the common refinement. Columns: generators, then the unit.
QMatrix value_matrix(const std::vector<StepFunction>& gens, const Ordinal& beta) {
  IntervalPartition common = IntervalPartition::trivial(beta);
  for (const auto& g : gens) common = common_refinement(common, g.partition());
  QMatrix m(common.cells(), gens.size() + 1);
  for (std::size_t r = 0; r < common.cells(); ++r) {
    const Ordinal& e = common.ends()[r];
    for (std::size_t c = 0; c < gens.size(); ++c) m(r, c) = gens[c].at(e);
    m(r, gens.size()) = 1;
  }
  return m;
}

std::vector<Rational> row_of(const QMatrix& m, std::size_t r) {
  std::vector<Rational> out(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) out[c] = m(r, c);
  return out;
}

bool kills(const QMatrix& m, const std::vector<std::vector<Rational>>& basis) {
  for (const auto& v : basis)
    for (const auto& x : m * v)
      if (x != 0) return false;
  return true;
}

// Leq: {M_g c >= 0} within {M_h c >= 0}. LL: the same for the strict cones.
bool cone_inside(const QMatrix& g, const QMatrix& h, GroupOrder order) {
  bool strict = order == GroupOrder::LL;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::vector<LinearConstraint> sys;
    for (std::size_t i = 0; i < g.rows(); ++i) sys.push_back({row_of(g, i), 0, strict});
    std::vector<Rational> neg = row_of(h, r);
    for (auto& x : neg) x = -x;
    sys.push_back({neg, 0, !strict});
    if (fm_feasible(sys)) return false;
  }
  return true;
}

}  // namespace

GroupIsoCheck check_partial_iso_group(const GroupPairs& pairs, GroupOrder order) {
  GroupIsoCheck out;
  std::vector<StepFunction> gs, hs;
  for (const auto& [g, h] : pairs) {
    gs.push_back(g);
    hs.push_back(h);
  }
  Ordinal ba = gs.empty() ? Ordinal() : gs.front().beta();
  Ordinal bb = hs.empty() ? Ordinal() : hs.front().beta();
  for (const auto& g : gs)
    if (g.beta() != ba) throw Error(ErrorCode::InvalidArgument, "left elements live in different groups");
  for (const auto& h : hs)
    if (h.beta() != bb) throw Error(ErrorCode::InvalidArgument, "right elements live in different groups");
  QMatrix mg = value_matrix(gs, ba);
  QMatrix mh = value_matrix(hs, bb);
  if (!kills(mh, mg.nullspace()) || !kills(mg, mh.nullspace())) {
    out.reason = "integer relations differ";
    return out;
  }
  try {
    if (!cone_inside(mg, mh, order) || !cone_inside(mh, mg, order)) {
      out.reason = "positive cones differ";
      return out;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SearchLimit) throw;
    out.bounded = true;
    out.verdict = naive_partial_iso_group(pairs, order);
    out.reason = "bounded enumeration";
    return out;
  }
  out.verdict = Verdict::IIWins;
  return out;
}

Verdict naive_partial_iso_group(const GroupPairs& pairs, GroupOrder order, int bound) {
  std::vector<StepFunction> gs, hs;
  for (const auto& [g, h] : pairs) {
    gs.push_back(g);
    hs.push_back(h);
  }
  Ordinal ba = gs.empty() ? Ordinal() : gs.front().beta();
  Ordinal bb = hs.empty() ? Ordinal() : hs.front().beta();
  QMatrix mg = value_matrix(gs, ba);
  QMatrix mh = value_matrix(hs, bb);
  std::size_t n = gs.size() + 1;
  std::vector<Rational> c(n, Rational(-bound));
  auto status = [&](const QMatrix& m) {
    // 0: zero, 1: in the positive cone, 2: neither.
    auto v = m * c;
    bool zero = true, weak = true, strict = true;
    for (const auto& x : v) {
      if (x != 0) zero = false;
      if (x < 0) weak = false;
      if (x <= 0) strict = false;
    }
    if (zero) return 0;
    return (order == GroupOrder::Leq ? weak : strict) ? 1 : 2;
  };
  while (true) {
    if (status(mg) != status(mh)) return Verdict::IWins;
    std::size_t k = 0;
    while (k < n && c[k] == bound) c[k++] = -bound;
    if (k == n) break;
    c[k] += 1;
  }
  return Verdict::IIWins;
}

bool induces_isomorphism(const DimGroup& a, const DimGroup&, const GroupPairs& pairs) {
  return check_partial_iso_group(pairs, a.order).verdict == Verdict::IIWins;
}

}  // namespace efk
