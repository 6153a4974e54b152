#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilbohr/block_sequence.hpp"
#include "nilbohr/index_set.hpp"
#include "nilbohr/torus.hpp"

namespace nilbohr {

/// A torus-valued polynomial map on finite index sets, in coefficient form:
///   f(a) = sum over gamma subset of a of coeff(gamma),
/// with finitely supported coefficients. Zero coefficients are erased, so
/// polynomial equality is mapping equality; every supported gamma satisfies
/// |gamma| <= degree.
class TorusPolynomial {
public:
  using CoeffMap = std::map<IndexSet, TorusPoint>;

  TorusPolynomial(int dim, int degree, CoeffMap coeffs);
  static TorusPolynomial zero(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const CoeffMap& coeffs() const { return coeffs_; }

  /// coeff(gamma), the zero point when gamma is unsupported.
  TorusPoint coeff(const IndexSet& gamma) const;

  /// Largest element appearing in the support (0 for constant polynomials).
  int support_max() const;

  bool operator==(const TorusPolynomial& other) const;

private:
  int dim_;
  int degree_;
  CoeffMap coeffs_;
};

/// f(a) = sum of coeff(gamma) over gamma subset of a. f(empty) is the
/// constant coefficient.
TorusPoint evaluate(const TorusPolynomial& f, const IndexSet& a);

/// The discrete difference along a non-empty beta: the polynomial g with
/// g(a) = f(a union beta) - f(a) for every a disjoint from beta. In
/// coefficient form b_gamma = sum over non-empty delta subset of beta of
/// coeff(gamma union delta), supported on gamma disjoint from beta; the
/// degree drops by one. Throws std::domain_error on empty beta.
TorusPolynomial discrete_difference(const TorusPolynomial& f, const IndexSet& beta);

/// Coefficient recovery by inclusion-exclusion:
///   a_gamma = sum over delta subset of gamma of (-1)^{|gamma \ delta|} values(delta),
/// truncated to |gamma| <= degree. `values` must be defined on every subset of
/// the union of its keys, including the empty set; a missing subset raises
/// std::invalid_argument.
TorusPolynomial coefficients_from_values(const std::map<IndexSet, TorusPoint>& values,
                                         int degree, int dim);

/// A one-variable rational polynomial with zero constant term, given by
/// coefficients of x^1..x^degree. Trailing zero coefficients are trimmed.
class RationalPolynomial {
public:
  explicit RationalPolynomial(std::vector<Rat> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  Rat operator()(const BigInt& x) const;

private:
  std::vector<Rat> coeffs_;  // coeffs_[i] multiplies x^{i+1}
};

/// The torus polynomial F with F(a) = p(sum of n_i over i in a) mod 1 for all
/// a subset of [1..window], recovered through coefficients_from_values. Since
/// the subset-sum is additive and p has degree d, every recovered coefficient
/// beyond degree d vanishes; this is verified exactly and a violation (which
/// would indicate a defect) raises std::logic_error.
TorusPolynomial lift_integer_polynomial(const RationalPolynomial& p,
                                        const std::vector<long long>& n, int window,
                                        int degree);

/// The restriction of f along a block sequence: g(beta) = f(union of selected
/// blocks). Computed by inclusion-exclusion on the restricted values; the
/// degree never increases. Requires the support of f to live inside the union
/// of the blocks (std::out_of_range otherwise).
TorusPolynomial restrict(const TorusPolynomial& f, const BlockSequence& b);

struct StableFormReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks the shift-stable normal form at parameter k on the window
/// [1..W], W the smallest multiple of k covering the support:
///   (i)  coeff(gamma) = 0 whenever diameter(gamma) > k,
///   (ii) coeff(gamma + k) = coeff(gamma) whenever both lie in the window.
StableFormReport is_stable_form(const TorusPolynomial& f, int k);

/// A shift-periodic coefficient family: the infinite extension of a stable
/// form polynomial. Coefficients are stored for representatives with
/// min in [1..k] and looked up through shifts by multiples of k.
class StableCoefficients {
public:
  /// Builds the periodic family from an explicit stable-form polynomial
  /// (throws std::invalid_argument when is_stable_form fails).
  StableCoefficients(const TorusPolynomial& f, int k);
  StableCoefficients(int dim, int degree, int k,
                     std::map<IndexSet, TorusPoint> representatives);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int period() const { return k_; }
  const std::map<IndexSet, TorusPoint>& representatives() const { return reps_; }

  TorusPoint constant() const { return constant_; }
  void set_constant(TorusPoint c) { constant_ = std::move(c); }

  /// coeff(gamma) for arbitrary gamma, via the shift taking min(gamma)
  /// into [1..k]; zero beyond degree or diameter k.
  TorusPoint coeff(const IndexSet& gamma) const;

  /// sum of coeff(gamma) over all gamma subset of a with diameter <= k and
  /// size <= degree, plus the constant term.
  TorusPoint evaluate(const IndexSet& a) const;

  /// Value change from adjoining `inserted` to `a` (operands disjoint):
  /// evaluate(a union inserted) - evaluate(a), computed from the
  /// k-neighbourhood of the inserted elements only.
  TorusPoint insertion_delta(const IndexSet& a, const IndexSet& inserted) const;

  /// Explicit polynomial on [1..window] with the periodic coefficients
  /// materialised (window must be a multiple of k).
  TorusPolynomial materialize(int window) const;

private:
  int dim_;
  int degree_;
  int k_;
  TorusPoint constant_;
  std::map<IndexSet, TorusPoint> reps_;  // keys have min in [1..k]
};

struct RestrictionInvarianceReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::uint64_t restrictions_checked = 0;
};

/// Finite-truncation surrogate for stability: over every canonical block
/// sequence inside [1..window] (anchors i_j = j + k*s_j, non-decreasing slack,
/// at least one block), verifies |f(union) - f(beta)| <= tol for every beta in
/// the truncation. Stable-form input is required.
RestrictionInvarianceReport check_restriction_invariance(const TorusPolynomial& f, int k,
                                                         int window, const Rat& tol);

/// Degree-d polynomial into the circle with coefficient 1/2 on every
/// non-empty gamma with diameter <= k and |gamma| <= d inside [1..window],
/// zero constant term. (The alternating weights (-1)^{|gamma|}/2 coincide
/// with 1/2 mod 1.) Requires d <= k; window defaults to 4k and must be a
/// multiple of k.
TorusPolynomial alternating_half_poly(int k, int d, int window = 0);

/// The same family as a periodic coefficient object.
StableCoefficients alternating_half_coeffs(int k, int d);

}  // namespace nilbohr
