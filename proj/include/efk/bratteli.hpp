#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "efk/dimgroup.hpp"
#include "efk/matrix.hpp"
#include "efk/ordinal.hpp"
#include "efk/rational.hpp"

namespace efk::bratteli {

// n! as an exact integer, memoized.
const Integer& factorial(unsigned long n);

// a_0 = k+2 and a_n = 2(a_{n-1}+1) - k + 1, for n = 0..N.
std::vector<unsigned long> a_seq(unsigned k, unsigned N);
unsigned long a_at(unsigned k, unsigned n);

// A_n = a_n on the diagonal, 1 elsewhere.
QMatrix matrix_A(unsigned k, unsigned long a);
// Closed-form inverse of matrix_A.
QMatrix matrix_A_inverse(unsigned k, unsigned long a);
// C_n = A_n / a_n!, the matrix of theta_n.
QMatrix matrix_C(unsigned k, unsigned n);

struct LevelData {
  unsigned k = 0, n = 0;
  unsigned long a_n = 0;
  QMatrix A, C, A_inv, B;
  Integer b_n;
};

// B_{n,n+1} from the closed form, checked against C_{n+1}^{-1} C_n, the
// generic inverse and the integrality of b_n. A failed check throws Internal.
LevelData level(unsigned k, unsigned n);

// Integer y with C_{n+1} y = x / a_n!.
std::vector<Integer> preimage(unsigned k, unsigned n, const std::vector<Integer>& x);

struct PositivePreimage {
  unsigned m = 0;
  std::vector<Integer> y;  // C_{m+1} y = x / a_n!, every entry > 0
};
// The least m >= n with a_{m+1} > max_i (sum_{j != i} x_j) / x_i - k + 2.
PositivePreimage positive_preimage(unsigned k, unsigned n, const std::vector<Integer>& x);

struct Lift {
  unsigned n = 0;           // least level whose a_n! clears every denominator
  std::vector<Integer> x;   // target = x / a_n!
  std::vector<Integer> y;   // C_{n+1} y = target
};
Lift lift_rational(const std::vector<Rational>& target, unsigned max_level = 12);

// Inductive system Z^{d_0} -> Z^{d_1} -> ... following a chain of refining
// partitions. Level i uses theta = C^{(d_i)}_{n_i}; connecting maps are
// E_i = (C^{(d_{i+1})}_{n_{i+1}})^{-1} R_i C^{(d_i)}_{n_i}, where R_i copies
// each coarse value onto the finer cells it splits into.
struct StackedSystem {
  std::vector<IntervalPartition> partitions;
  std::vector<unsigned> n;      // strictly increasing
  std::vector<QMatrix> R;       // refinement matrices, (d_{i+1}) x (d_i)
  std::vector<QMatrix> E;       // positive integer matrices
};

struct StackOptions {
  unsigned first_level = 1;
  unsigned search_cap = 50;
  unsigned long max_a = 200000;  // refuse factorials beyond this
};

QMatrix refinement_matrix(const IntervalPartition& coarse, const IntervalPartition& fine);
StackedSystem stack_partitions(std::vector<IntervalPartition> chain, const StackOptions& options = {});
// The D_k matrix: (p_1..p_k) -> (p_1..p_k, p_k).
QMatrix duplication_matrix(unsigned k);
// G_{omega+1} presented as Z -> Z^2 -> ... -> Z^{k_max}.
StackedSystem stack_omega(unsigned k_max, const StackOptions& options = {});

// Level n of a chain of partitions of [0, gamma] that eventually
// separates every point of gamma + 1 below any fixed bound.
IntervalPartition partition_at(const Ordinal& gamma, unsigned n);
// alpha_n for the standard fundamental sequence of a limit ordinal.
Ordinal fundamental_term(const Ordinal& limit, unsigned n);

struct DiagramLevel {
  std::size_t vertices = 0;
  std::vector<std::string> labels;
  // edges[j][i]: multiplicity from vertex i here to vertex j on the next level.
  std::vector<std::vector<Integer>> edges;

  friend bool operator==(const DiagramLevel&, const DiagramLevel&) = default;
};

struct Diagram {
  std::string name;
  std::vector<DiagramLevel> levels;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

Diagram diagram_of(const StackedSystem& system, const std::string& name);
// G_k with `maps` connecting maps B_{0,1} .. B_{maps-1,maps}.
Diagram diagram_k(unsigned k, unsigned maps);
// G_{beta+1} for a limit beta, through the partitions stretched from
// alpha_0 < alpha_1 < ... < beta. depth partitions are used.
Diagram limit_diagram(const Ordinal& beta, const std::vector<Ordinal>& fundamental, unsigned depth,
                      const StackOptions& options = {});
// G_space for a successor ordinal space = alpha + 1.
Diagram diagram_for(const Ordinal& space, unsigned depth, const StackOptions& options = {});

enum class ExportFormat { Dot, Json };
ExportFormat parse_format(const std::string& name);
std::string export_diagram(const Diagram& d, ExportFormat format);
Diagram parse_diagram_json(const std::string& text);

}  // namespace efk::bratteli
