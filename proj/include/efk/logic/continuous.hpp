#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "efk/logic/discrete.hpp"
#include "efk/ordinal.hpp"
#include "efk/pigame.hpp"

namespace efk::logic {

// A letter x or x*; the constant symbol c is a letter with `constant` set.
struct Letter {
  std::string name;
  bool star = false;
  bool constant = false;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

struct Monomial {
  Gaussian coeff{1};
  std::vector<Letter> letters;  // empty: a scalar
};

// Noncommutative *-polynomial with Gaussian-rational coefficients.
struct StarPolynomial {
  std::vector<Monomial> terms;

  static StarPolynomial var(const std::string& name, bool star = false);
  static StarPolynomial constant_c();
  static StarPolynomial scalar(const Gaussian& g);

  StarPolynomial adjoint() const;
  std::set<std::string> vars() const;
  // Drops zero coefficients and merges equal words.
  StarPolynomial simplified() const;
  // Replaces variable x_i (and x_i*) by args[i], keyed by name.
  StarPolynomial substitute(const std::vector<std::string>& names, const std::vector<StarPolynomial>& args) const;
  std::string str() const;

  friend StarPolynomial operator+(const StarPolynomial& a, const StarPolynomial& b);
  friend StarPolynomial operator-(const StarPolynomial& a, const StarPolynomial& b);
  friend StarPolynomial operator*(const StarPolynomial& a, const StarPolynomial& b);
  friend StarPolynomial operator*(const Gaussian& s, const StarPolynomial& a);
};

// Closed interval; hi absent means unbounded above.
struct Range {
  Rational lo = 0;
  std::optional<Rational> hi;
  bool within(const Range& outer) const;
  std::string str() const;
};

enum class CKind { Norm, Const, Max, Min, DotMinus, Affine, Inf, Sup, Phi, Schema };

struct CNode;
using CFormula = std::shared_ptr<const CNode>;

// Declared bounds of an infinitary family node, checked at construction.
struct FamilyBound {
  Rational lipschitz;
  Range range;
};

struct CNode {
  CKind kind = CKind::Const;
  StarPolynomial poly;              // Norm
  Rational value;                   // Const
  std::vector<CFormula> children;   // connectives, quantifier body (one)
  std::vector<Rational> weights;    // Affine: sum weights[i] * child_i + value
  std::vector<std::string> block;   // Inf, Sup: bound variables
  unsigned n = 0;                   // Phi
  Rational delta;                   // Phi
  std::vector<StarPolynomial> args; // Phi
  std::string name;                 // Schema
  std::vector<std::string> free;    // Schema
  std::optional<FamilyBound> family;

  // Static metadata, filled by the builders.
  Ordinal rank;
  Range range;
  Rational lipschitz;  // with respect to all free variables
};

CFormula c_norm(StarPolynomial p);
CFormula c_const(Rational q);
CFormula c_max(std::vector<CFormula> kids, std::optional<FamilyBound> family = {});
CFormula c_min(std::vector<CFormula> kids, std::optional<FamilyBound> family = {});
CFormula c_dotminus(CFormula a, CFormula b);
CFormula c_affine(std::vector<Rational> weights, std::vector<CFormula> kids, Rational shift = 0);
CFormula c_inf(std::vector<std::string> block, CFormula body);
CFormula c_sup(std::vector<std::string> block, CFormula body);
// phi_{n,delta}(args) kept as a macro; expand_phi builds the full formula.
CFormula c_phi(unsigned n, Rational delta, std::vector<StarPolynomial> args);
CFormula c_schema(const std::string& name, Ordinal rank, Rational lipschitz, Range range,
                  std::vector<std::string> free = {});

std::set<std::string> free_vars(const CFormula& f);
// Lipschitz bound in the variables of `vars` (others held fixed), for
// arguments in the unit ball.
Rational lipschitz_in(const CFormula& f, const std::set<std::string>& vars);
Ordinal qr(const CFormula& f);
std::size_t count_nodes(const CFormula& f, CKind kind);

// Grid points (p + qi)/N of the closed unit disc with N = ceil(2n/delta),
// in lexicographic order of (p, q).
std::vector<Gaussian> disc_grid(unsigned n, const Rational& delta);

struct PhiOptions {
  std::size_t max_operands = 200000;
};

// The net {b_h} of the unit ball of C^n: lexicographic n-tuples of grid points.
std::vector<Vec> phi_net(unsigned n, const Rational& delta, std::size_t cap);

// phi_{n,delta}(x_0, ..., x_{n-1}) as one max node with J^2 + J operands.
// Throws SearchLimit past the operand cap.
CFormula build_phi_n_delta(unsigned n, const Rational& delta, const PhiOptions& options = {});
CFormula expand_phi(const CNode& phi, const PhiOptions& options = {});

// The three-block formula for sum z_i + m0 u = sum w_j + m1 u with
// variables named z0.., w0.. and bound variables v, v0.., u0...
CFormula translate_v_atomic(unsigned n0, unsigned n1, unsigned m0, unsigned m1, const Rational& delta);

struct CstarOptions {
  Rational delta{1, 10};
  Rational cap{1};  // the bound M used to truncate infinitary families
};

// L_{V,u} to L_{C*,c}: atoms become three-block formulas, negation is
// delta -. psi, conjunction a capped max, and existentials absorb a
// projection penalty.
CFormula translate_v_to_cstar(const Formula& phi, const CstarOptions& options = {});

std::string to_sexpr(const CFormula& f);

// delta' = 5 delta + 4 delta^2.
Rational stability_delta_prime(const Rational& delta);
// eps / n^2.
Rational perturbation_delta(const Rational& eps, unsigned long n);

}  // namespace efk::logic
