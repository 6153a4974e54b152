#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nilbohr/index_set.hpp"
#include "nilbohr/torus.hpp"
#include "nilbohr/unitriangular.hpp"

namespace nilbohr {

/// Vertices of {0,1}^r are addressed by bitmask: bit i-1 set means
/// coordinate i equals 1.
using Vertex = std::uint32_t;

/// A combinatorial parallelepiped: vertex(omega) = base union (union of the
/// sides selected by omega), with base and sides pairwise disjoint and all
/// sides non-empty. Generators are retained.
class SetParallelepiped {
public:
  SetParallelepiped(IndexSet base, std::vector<IndexSet> sides);

  int dimension() const { return static_cast<int>(sides_.size()); }
  const IndexSet& base() const { return base_; }
  const std::vector<IndexSet>& sides() const { return sides_; }
  IndexSet vertex(Vertex omega) const;

private:
  IndexSet base_;
  std::vector<IndexSet> sides_;
};

SetParallelepiped make_parallelepiped(const IndexSet& base,
                                      const std::vector<IndexSet>& sides);

/// A cube of torus points with a declared filtration degree d (the abelian
/// filtration G_0 = ... = G_d = R^m, trivial beyond).
class TorusCube {
public:
  TorusCube(int dimension, int degree, std::vector<TorusPoint> values);

  int dimension() const { return r_; }
  int degree() const { return degree_; }
  int point_dim() const { return values_.empty() ? 0 : values_.front().dim(); }
  const TorusPoint& value(Vertex omega) const;
  const std::vector<TorusPoint>& values() const { return values_; }

private:
  int r_;
  int degree_;
  std::vector<TorusPoint> values_;  // indexed by vertex bitmask
};

/// A face of the cube: coordinates listed in `fixed` are pinned to the bits of
/// `fixed_values`; the rest are free.
struct FaceSelector {
  Vertex fixed = 0;         // bitmask of pinned coordinates
  Vertex fixed_values = 0;  // their values (subset of `fixed`)
};

/// Signed sum over the face's vertices, sign (-1)^{popcount of the free part}.
/// Throws std::invalid_argument if fixed_values sets a bit outside `fixed`.
TorusPoint alternating_sum(const TorusCube& c, const FaceSelector& face);

/// Exact membership test for the abelian cube group of degree d: every face of
/// dimension >= d+1 must have vanishing alternating sum. (Equivalent to the
/// generator description; tests validate the equivalence against a
/// generator-closure oracle on cyclic coordinates.)
bool is_hk_cube_abelian(const TorusCube& c);

/// The unique value at vertex 1^r making every (d+1)-face through that corner
/// sum to zero; r >= d+1 required. The partial cube is passed as the full
/// vertex list with the corner entry ignored. Throws std::invalid_argument if
/// two faces force different corners (inconsistent partial data).
TorusPoint complete_corner_abelian(int r, int degree,
                                   const std::vector<TorusPoint>& partial_values);

struct UnitriangularFactorization {
  // factors[omega] for each vertex, in the peeling order
  std::vector<Unitriangular> factors;
  bool member = true;  // every factor sits in its filtration level G_{|omega|}
};

/// Unique expansion of a unitriangular cube as an ordered product of
/// upper-face elements g_omega^{[omega]}: factors are peeled in the fixed
/// inclusion-refining order (ascending popcount, ties by ascending reversed
/// binary value). Membership in the cube group of the lower central series
/// holds iff each factor g_omega lies in level |omega|.
UnitriangularFactorization hk_factorize_unitriangular(
    const std::vector<Unitriangular>& cube_values);

/// The ordered vertex list used by the factorization.
std::vector<Vertex> face_order(int r);

/// cube = product over the listed factors of g_omega^{[omega]}; inverse of a
/// successful factorization.
std::vector<Unitriangular> build_unitriangular_cube(
    int r, const std::vector<Unitriangular>& factors_by_vertex);

}  // namespace nilbohr
