#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "efk/rational.hpp"

namespace efk {

class Ordinal;

// One CNF summand omega^exponent * coefficient. Epsilon atoms are stored with
// `epsilon >= 0` and no exponent; they stand for omega^{e_k} = e_k.
struct OrdinalTerm {
  std::shared_ptr<const Ordinal> exponent;
  int epsilon = -1;
  Integer coefficient;

  bool is_epsilon() const { return epsilon >= 0; }
};

struct OrdinalLimits {
  int max_epsilon = 8;
};

class Ordinal {
 public:
  Ordinal() = default;
  Ordinal(long long n);  // NOLINT: finite ordinals convert implicitly
  static Ordinal finite(const Integer& n);
  static Ordinal omega();
  static Ordinal epsilon(int k);
  static Ordinal from_terms(std::vector<OrdinalTerm> terms);

  static Ordinal parse(std::string_view text, const OrdinalLimits& limits = {});

  const std::vector<OrdinalTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const { return !is_zero() && !is_successor(); }
  // Value of a finite ordinal; nullopt when infinite.
  std::optional<Integer> finite_value() const;
  // Finite value as an unsigned, throwing when infinite or too large.
  std::uint64_t to_u64() const;
  Ordinal predecessor() const;
  // Exponent of the leading term (0 for finite, e_k for an epsilon atom).
  Ordinal leading_exponent() const;
  Integer leading_coefficient() const;
  int max_epsilon_index() const;

  // Canonical ASCII form accepted by parse().
  std::string str() const;
  // Unicode rendering for humans.
  std::string pretty() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<OrdinalTerm> terms_;
};

enum class Cmp { LT, EQ, GT };
Cmp compare(const Ordinal& a, const Ordinal& b);

Ordinal operator+(const Ordinal& a, const Ordinal& b);
Ordinal operator*(const Ordinal& a, const Ordinal& b);
Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
Ordinal omega_pow(const Ordinal& a);
Ordinal left_subtract(const Ordinal& a, const Ordinal& b);
bool is_mult_indecomposable(const Ordinal& a);
std::pair<Ordinal, Integer> ms_invariant(const Ordinal& a);

std::size_t hash_value(const Ordinal& a);

// Random ordinal strictly below `bound` (bound > 0). `depth` limits the
// nesting of sampled exponents; `finite_cap` bounds sampled finite parts.
struct OrdinalSampler {
  unsigned depth = 3;
  unsigned finite_cap = 12;
  Ordinal below(const Ordinal& bound, std::mt19937_64& rng) const;

 private:
  Ordinal below_power(const Ordinal& exponent, unsigned depth, std::mt19937_64& rng) const;
  Ordinal below_impl(const Ordinal& bound, unsigned depth, std::mt19937_64& rng) const;
};

}  // namespace efk

template <>
struct std::hash<efk::Ordinal> {
  std::size_t operator()(const efk::Ordinal& a) const { return efk::hash_value(a); }
};
