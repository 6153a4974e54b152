#pragma once

#include <vector>

#include "nilbohr/index_set.hpp"
#include "nilbohr/rational.hpp"
#include "nilbohr/sequence_spec.hpp"
#include "nilbohr/torus_poly.hpp"

namespace testutil {

using nilbohr::IndexSet;
using nilbohr::Rat;
using nilbohr::SplitMix64;
using nilbohr::TorusPoint;
using nilbohr::TorusPolynomial;

inline Rat random_rat(SplitMix64& rng, long long max_den) {
  long long den = rng.range(1, max_den);
  long long num = rng.range(0, den - 1);
  return Rat(num, den);
}

inline TorusPoint random_point(SplitMix64& rng, int dim, long long max_den) {
  std::vector<Rat> coords;
  for (int i = 0; i < dim; ++i) coords.push_back(random_rat(rng, max_den));
  return TorusPoint(std::move(coords));
}

/// Random polynomial with full support on subsets of [1..window] of size <= d
/// (some coefficients land on zero and get erased by normalisation).
inline TorusPolynomial random_poly(SplitMix64& rng, int dim, int degree, int window,
                                   long long max_den) {
  TorusPolynomial::CoeffMap coeffs;
  const std::uint32_t full = (window == 0) ? 0 : ((1u << window) - 1);
  for (std::uint32_t mask = 0;; ++mask) {
    if (__builtin_popcount(mask) <= degree) {
      std::vector<int> elems;
      for (int i = 0; i < window; ++i)
        if (mask & (1u << i)) elems.push_back(i + 1);
      coeffs.emplace(IndexSet(elems), random_point(rng, dim, max_den));
    }
    if (mask == full) break;
  }
  return TorusPolynomial(dim, degree, std::move(coeffs));
}

/// All subsets of [1..n] as index sets, bitmask order.
inline std::vector<IndexSet> all_subsets(int n) {
  std::vector<IndexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> elems;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) elems.push_back(i + 1);
    out.emplace_back(elems);
  }
  return out;
}

}  // namespace testutil
