#include <doctest.h>

#include "nilbohr/cube.hpp"
#include "nilbohr/unitriangular.hpp"
#include "test_util.hpp"

using namespace nilbohr;

namespace {

Unitriangular random_unitriangular(SplitMix64& rng, int n, long long max_den) {
  Unitriangular g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long long den = rng.range(1, max_den);
      long long num = rng.range(-3 * den, 3 * den);
      g.set(i, j, Rat(num, den));
    }
  return g;
}

Unitriangular random_lattice(SplitMix64& rng, int n, int bound) {
  Unitriangular g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set(i, j, Rat(rng.range(-bound, bound)));
  return g;
}

// full-grid minimisation, the independent oracle for the column-wise dist
Rat naive_dist(const Unitriangular& g, int radius) {
  Unitriangular rho = reduce_mod_lattice(g);
  const int n = rho.size();
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cells.emplace_back(i, j);
  std::vector<int> choice(cells.size(), -radius);
  Rat best(-1);
  while (true) {
    Unitriangular gamma(n);
    for (std::size_t c = 0; c < cells.size(); ++c)
      gamma.set(cells[c].first, cells[c].second, Rat(choice[c]));
    Unitriangular prod = rho * gamma;
    Rat worst(0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Rat v = prod.at(i, j);
        if (v < 0) v = -v;
        if (v > worst) worst = v;
      }
    if (best < 0 || worst < best) best = worst;
    std::size_t pos = 0;
    while (pos < choice.size() && choice[pos] == radius) {
      choice[pos] = -radius;
      ++pos;
    }
    if (pos == choice.size()) break;
    ++choice[pos];
  }
  return best;
}

}  // namespace

TEST_CASE("filtration levels cut by vanishing superdiagonals") {
  CHECK(filtration_level(Unitriangular::identity(3)) == 3);
  CHECK(filtration_level(Unitriangular::heisenberg(Rat(1), Rat(0), Rat(0))) == 1);
  CHECK(filtration_level(Unitriangular::heisenberg(Rat(0), Rat(0), Rat(1, 2))) == 2);
}

TEST_CASE("powers") {
  Unitriangular g = Unitriangular::heisenberg(Rat(1), Rat(1), Rat(0));
  Unitriangular g2 = power(g, 2);
  CHECK(g2.at(0, 1) == 2);
  CHECK(g2.at(1, 2) == 2);
  CHECK(g2.at(0, 2) == 1);
  CHECK(power(g, 1) == g);
  CHECK(power(g, 0).is_identity());
  CHECK(power(g, -3) * power(g, 3) == Unitriangular::identity(3));

  SUBCASE("top-right closed form against iterated multiplication") {
    Unitriangular h = Unitriangular::heisenberg(Rat(2, 3), Rat(3, 5), Rat(1, 7));
    Unitriangular acc = Unitriangular::identity(3);
    for (int e = 1; e <= 50; ++e) {
      acc = acc * h;
      CHECK(power(h, e) == acc);
      Rat expected = Rat(e) * Rat(1, 7) + Rat(e) * Rat(e - 1) / 2 * Rat(2, 3) * Rat(3, 5);
      CHECK(acc.at(0, 2) == expected);
    }
  }

  SUBCASE("power is additive in the exponent") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      Unitriangular g4 = random_unitriangular(rng, 4, 6);
      long long a = rng.range(-20, 20), b = rng.range(-20, 20);
      CHECK(power(g4, a + b) == power(g4, a) * power(g4, b));
    }
  }
}

TEST_CASE("lattice reduction") {
  {
    Unitriangular g(3);
    g.set(0, 1, Rat(2));
    CHECK(reduce_mod_lattice(g).is_identity());
  }
  {
    Unitriangular g(3);
    g.set(0, 1, Rat(1, 2));
    g.set(0, 2, Rat(5, 4));
    Unitriangular r = reduce_mod_lattice(g);
    CHECK(r.at(0, 1) == Rat(1, 2));
    CHECK(r.at(0, 2) == Rat(1, 4));
    CHECK(r.at(1, 2) == 0);
  }
  SUBCASE("idempotent and right-lattice-invariant") {
    SplitMix64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = (trial % 2 == 0) ? 3 : 4;
      Unitriangular g = random_unitriangular(rng, n, 8);
      Unitriangular r = reduce_mod_lattice(g);
      CHECK(reduce_mod_lattice(r) == r);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          CHECK(r.at(i, j) >= 0);
          CHECK(r.at(i, j) < 1);
        }
      Unitriangular gamma = random_lattice(rng, n, 3);
      CHECK(reduce_mod_lattice(g * gamma) == r);
    }
  }
}

TEST_CASE("distance to the identity") {
  CHECK(dist_to_identity(Unitriangular::identity(4)) == 0);
  {
    Unitriangular g(3);
    g.set(0, 1, Rat(9, 10));
    CHECK(dist_to_identity(g, 2) == Rat(1, 10));
  }
  SUBCASE("column-wise minimisation equals the naive grid") {
    SplitMix64 rng(211);
    for (int trial = 0; trial < 60; ++trial) {
      Unitriangular g = random_unitriangular(rng, 3, 10);
      CHECK(dist_to_identity(g, 2) == naive_dist(g, 2));
      CHECK(dist_to_identity(g, 4) == naive_dist(g, 4));
    }
    for (int trial = 0; trial < 8; ++trial) {
      Unitriangular g = random_unitriangular(rng, 4, 10);
      CHECK(dist_to_identity(g, 2) == naive_dist(g, 2));
    }
  }
  SUBCASE("radius 2 already realises reduced distances") {
    SplitMix64 rng(223);
    for (int trial = 0; trial < 100; ++trial) {
      Unitriangular g = random_unitriangular(rng, (trial % 2) ? 3 : 4, 12);
      CHECK(dist_to_identity(g, 2) == dist_to_identity(g, 4));
    }
  }
}

TEST_CASE("orbit values") {
  CHECK(orbit_value(Unitriangular::heisenberg(Rat(3, 5), Rat(0), Rat(0)), 5).is_identity());
  CHECK(orbit_value(Unitriangular::heisenberg(Rat(1, 3), Rat(2, 7), Rat(1, 2)), 0)
            .is_identity());
  {
    Unitriangular g = Unitriangular::heisenberg(Rat(1, 3), Rat(1, 2), Rat(0));
    Unitriangular r = orbit_value(g, 6);
    CHECK(r.at(0, 1) == 0);
    CHECK(r.at(1, 2) == 0);
    CHECK(r.at(0, 2) == Rat(1, 2));
    CHECK(dist_to_identity(power(g, 6)) == Rat(1, 2));
  }
}

TEST_CASE("abelianisation") {
  CHECK(project_abelian(Unitriangular::identity(3)) == TorusPoint::zero(2));
  {
    Unitriangular g = Unitriangular::heisenberg(Rat(1, 3), Rat(1, 2), Rat(7));
    CHECK(project_abelian(g) == TorusPoint({Rat(1, 3), Rat(1, 2)}));
  }
  SUBCASE("homomorphism into the torus") {
    SplitMix64 rng(307);
    for (int trial = 0; trial < 50; ++trial) {
      Unitriangular g = random_unitriangular(rng, 4, 9);
      Unitriangular h = random_unitriangular(rng, 4, 9);
      CHECK(project_abelian(g * h) == project_abelian(g) + project_abelian(h));
    }
  }
  SUBCASE("orbit distance with exponent one ignores lattice translates") {
    SplitMix64 rng(311);
    for (int trial = 0; trial < 50; ++trial) {
      Unitriangular g = random_unitriangular(rng, 3, 9);
      Unitriangular gamma = random_lattice(rng, 3, 2);
      CHECK(dist_to_identity(orbit_value(g, 1)) ==
            dist_to_identity(orbit_value(g * gamma, 1)));
    }
  }
}

TEST_CASE("commutators descend through the filtration") {
  SplitMix64 rng(401);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5;
    int i = 1 + static_cast<int>(rng.range(0, 2));
    int j = 1 + static_cast<int>(rng.range(0, 2));
    Unitriangular g(n), h(n);
    for (int r = 0; r < n; ++r) {
      for (int c = r + i; c < n; ++c) g.set(r, c, testutil::random_rat(rng, 6));
      for (int c = r + j; c < n; ++c) h.set(r, c, testutil::random_rat(rng, 6));
    }
    REQUIRE(filtration_level(g) >= i);
    REQUIRE(filtration_level(h) >= j);
    Unitriangular comm = g.inverse() * h.inverse() * g * h;
    // levels cap at n, where the filtration terminates
    CHECK(filtration_level(comm) >= std::min(i + j, n));
  }
}

TEST_CASE("power cubes over parallelepipeds pass the cube-group factorization") {
  SplitMix64 rng(419);
  std::vector<long long> n = {1, 2, 3, 4, 5, 6, 7, 8};
  for (int r = 1; r <= 3; ++r) {
    for (int trial = 0; trial < 8; ++trial) {
      Unitriangular g = random_unitriangular(rng, 3, 8);
      std::vector<std::vector<int>> groups(static_cast<std::size_t>(r) + 1);
      for (int x = 1; x <= 8; ++x)
        groups[static_cast<std::size_t>(rng.range(0, r))].push_back(x);
      bool ok = true;
      for (int s = 1; s <= r; ++s)
        if (groups[static_cast<std::size_t>(s)].empty()) ok = false;
      if (!ok) continue;
      std::vector<IndexSet> sides;
      for (int s = 1; s <= r; ++s) sides.emplace_back(groups[static_cast<std::size_t>(s)]);
      SetParallelepiped p = make_parallelepiped(IndexSet(groups[0]), sides);

      std::vector<Unitriangular> cube;
      for (Vertex w = 0; w < (Vertex{1} << r); ++w) {
        IndexSet vert = p.vertex(w);
        long long e = 0;
        for (int i : vert.elements()) e += n[static_cast<std::size_t>(i - 1)];
        cube.push_back(power(g, e));
      }
      CHECK(hk_factorize_unitriangular(cube).member);
    }
  }
}
