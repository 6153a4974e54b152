#pragma once

#include <string>
#include <vector>

#include "nilbohr/rational.hpp"

namespace nilbohr {

/// Convergents p_k/q_k of a continued fraction [a0; a1, a2, ...] via the
/// standard recurrence p_k = a_k p_{k-1} + p_{k-2}. Input must be non-empty
/// with a_k >= 1 for k >= 1.
std::vector<Rat> convergents(const std::vector<BigInt>& partial_quotients);

/// Continued-fraction expansions of a few standard irrationals, long enough
/// for desk-scale denominators. Known names: "sqrt2", "sqrt3", "sqrt5",
/// "golden", "e", "pi". Throws std::invalid_argument on other names.
std::vector<BigInt> standard_continued_fraction(const std::string& name, int terms);

/// The last convergent of the named constant with denominator <= max_den.
Rat convergent_approx(const std::string& name, const BigInt& max_den);

}  // namespace nilbohr
