#pragma once

#include <vector>

#include "nilbohr/rational.hpp"
#include "nilbohr/torus.hpp"

namespace nilbohr {

/// An upper unitriangular matrix of exact rationals: 1 on the diagonal, 0
/// below. Size n realises an (n-1)-step nilpotent group; the integer
/// unitriangular matrices form the lattice, and the lower central series is
/// cut out by vanishing superdiagonal offsets.
class Unitriangular {
public:
  explicit Unitriangular(int n);  // identity
  Unitriangular(int n, std::vector<Rat> entries);  // row-major, validated

  static Unitriangular identity(int n);
  /// 3x3 with offset-1 entries (a, b) and corner c.
  static Unitriangular heisenberg(const Rat& a, const Rat& b, const Rat& c);

  int size() const { return n_; }
  const Rat& at(int row, int col) const;  // 0-based
  void set(int row, int col, const Rat& value);

  bool is_identity() const;
  bool is_integral() const;

  Unitriangular operator*(const Unitriangular& other) const;
  Unitriangular inverse() const;
  bool operator==(const Unitriangular& other) const;

private:
  int n_;
  std::vector<Rat> entries_;
};

/// The largest i >= 1 with g in G_i of the lower central series (superdiagonal
/// offsets 1..i-1 vanish); the identity reports n, the filtration length plus
/// one.
int filtration_level(const Unitriangular& g);

/// Exact matrix power by binary exponentiation; negative exponents go through
/// the inverse.
Unitriangular power(const Unitriangular& g, long long e);

/// The unique representative g*gamma, gamma integer unitriangular, with every
/// strictly-upper entry in [0,1). Offsets are cleared in ascending order
/// (clearing an entry only perturbs higher offsets), so the procedure
/// terminates with all entries reduced; it is idempotent and invariant under
/// right multiplication by the lattice.
Unitriangular reduce_mod_lattice(const Unitriangular& g);

/// min over integer unitriangular gamma with entries in [-radius, radius] of
/// the entrywise max norm of reduce(g)*gamma - identity. The minimisation is
/// exact: the product's column j depends only on gamma's column j, so the
/// min-max splits into independent per-column minimisations. Faithful to the
/// quotient metric near the identity (distances < 1/2 are always realised
/// within radius 2).
Rat dist_to_identity(const Unitriangular& g, int radius = 2);

/// reduce_mod_lattice(power(g, e)).
Unitriangular orbit_value(const Unitriangular& g, long long e);

/// First superdiagonal reduced mod 1: the image in the abelianisation, a
/// group homomorphism into the (n-1)-torus.
TorusPoint project_abelian(const Unitriangular& g);

}  // namespace nilbohr
