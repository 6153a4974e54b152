#pragma once

#include <string>
#include <vector>

#include "nilbohr/rational.hpp"

// Stand-alone re-verification of emitted witnesses. Deliberately shares no
// evaluation code with the search engines: polynomial values go through
// Horner's rule, matrix powers through plain repeated multiplication, the
// lattice reduction clears columns in a different order, and the quotient
// distance is a full grid minimum. Only the rational scalar and JSON layers
// are shared.
namespace nilbohr::check {

/// |p(sum of n_i over alpha)| distance to the nearest integer, p given by
/// coefficients of x^1..x^d.
Rat poly_witness_value(const std::vector<Rat>& poly_coeffs,
                       const std::vector<long long>& n, const std::vector<int>& alpha);

/// Quotient distance of g^e for an upper unitriangular rational matrix,
/// radius-2 grid, via an independent reduction and a naive minimisation.
Rat orbit_witness_value(const std::vector<std::vector<Rat>>& g, long long e);

/// True iff alpha is non-empty, inside [1..depth], with gaps <= k.
bool valid_candidate(const std::vector<int>& alpha, int k, int depth);

}  // namespace nilbohr::check
