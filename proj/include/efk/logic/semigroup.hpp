#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "efk/logic/discrete.hpp"

namespace efk::logic {

// Finite commutative monoid (H, +, 0) with a distinguished point v.
struct PointedSemigroup {
  std::size_t size = 1;
  std::vector<std::vector<std::size_t>> add{{0}};
  std::size_t v = 0;

  // Throws InvalidArgument unless the table is associative, commutative
  // and has an identity, and v is in range.
  void validate() const;
  std::size_t zero() const;
  FiniteStructure structure() const;

  static PointedSemigroup cyclic_group(std::size_t n, std::size_t v);
  // {0, ..., n-1} with a + b = min(a + b, n - 1).
  static PointedSemigroup truncated(std::size_t n, std::size_t v);
  // {0, ..., n-1} with a + b = max(a, b).
  static PointedSemigroup max_semilattice(std::size_t n, std::size_t v);
};

// G(H): pairs (g0, g1) under (g0, g1) ~ (h0, h1) iff g0 + h1 + k = h0 + g1 + k
// for some k, with positives {(g, 0)} and unit (v, 0).
struct GrothendieckGroup {
  PointedSemigroup base;
  std::vector<std::size_t> class_of_pair;  // index g0 * |H| + g1
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> members;
  FiniteStructure structure;  // elements are class indices

  std::size_t size() const { return members.size(); }
  std::size_t class_of(std::size_t g0, std::size_t g1) const { return class_of_pair[g0 * base.size + g1]; }
};

GrothendieckGroup grothendieck(const PointedSemigroup& h);

// Rewrites an L_{K0,u}-formula about G(H) as an L_{V,u}-formula about H.
// A free variable x becomes the pair (x.0, x.1); fresh witnesses are named
// z.N and w.N, skipping any N whose names clash with a pair component
// x.0 or x.1 of phi. A schema of rank r becomes a schema of rank 2*r + 2.
Formula translate_k0_to_v(const Formula& phi);

// 2 * qr(phi) + 2 in ordinal arithmetic.
Ordinal translation_rank_bound(const Formula& phi);

struct TranslationReport {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  bool exhaustive = false;
  std::vector<std::string> details;  // first few mismatches
};

// Compares phi on G(H) with its translation on H at tuples of G(H), using
// random representatives of each class. Exhaustive when there are at most
// `samples` tuples.
TranslationReport verify_translation(const Formula& phi, const PointedSemigroup& h, std::size_t samples,
                                     std::uint64_t seed);

}  // namespace efk::logic
