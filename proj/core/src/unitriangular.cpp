#include "nilbohr/unitriangular.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilbohr {

Unitriangular::Unitriangular(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, Rat(0)) {
  if (n < 1) throw std::invalid_argument("Unitriangular: size must be >= 1");
  for (int i = 0; i < n; ++i) entries_[static_cast<std::size_t>(i) * n + i] = 1;
}

Unitriangular::Unitriangular(int n, std::vector<Rat> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n < 1 || entries_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("Unitriangular: bad entry count");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const Rat& e = entries_[static_cast<std::size_t>(i) * n + j];
      if (i == j ? e != 1 : e != 0)
        throw std::invalid_argument("Unitriangular: matrix is not upper unitriangular");
    }
}

Unitriangular Unitriangular::identity(int n) { return Unitriangular(n); }

Unitriangular Unitriangular::heisenberg(const Rat& a, const Rat& b, const Rat& c) {
  Unitriangular g(3);
  g.set(0, 1, a);
  g.set(1, 2, b);
  g.set(0, 2, c);
  return g;
}

const Rat& Unitriangular::at(int row, int col) const {
  return entries_[static_cast<std::size_t>(row) * n_ + col];
}

void Unitriangular::set(int row, int col, const Rat& value) {
  if (row >= col) throw std::invalid_argument("Unitriangular::set below the diagonal");
  entries_[static_cast<std::size_t>(row) * n_ + col] = value;
}

bool Unitriangular::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (at(i, j) != 0) return false;
  return true;
}

bool Unitriangular::is_integral() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (rat_den(at(i, j)) != 1) return false;
  return true;
}

Unitriangular Unitriangular::operator*(const Unitriangular& other) const {
  if (n_ != other.n_) throw std::invalid_argument("Unitriangular: size mismatch");
  Unitriangular out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      Rat acc(0);
      for (int t = i; t <= j; ++t) acc += at(i, t) * other.at(t, j);
      out.entries_[static_cast<std::size_t>(i) * n_ + j] = std::move(acc);
    }
  return out;
}

Unitriangular Unitriangular::inverse() const {
  // Write g = I + N with N strictly upper (nilpotent): g^{-1} = I - N + N^2 - ...
  auto strict = [&](const std::vector<Rat>& m, int i, int j) {
    return m[static_cast<std::size_t>(i) * n_ + j];
  };
  std::vector<Rat> nil(entries_);
  for (int i = 0; i < n_; ++i) nil[static_cast<std::size_t>(i) * n_ + i] = 0;

  Unitriangular out(n_);
  std::vector<Rat> acc(nil);  // N^t, starting at t = 1
  int sign = -1;
  for (int t = 1; t < n_; ++t) {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        const Rat& v = strict(acc, i, j);
        if (v != 0)
          out.entries_[static_cast<std::size_t>(i) * n_ + j] += (sign > 0 ? v : -v);
      }
    std::vector<Rat> next(static_cast<std::size_t>(n_) * n_, Rat(0));
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        Rat s(0);
        for (int u = i + 1; u < j; ++u) s += strict(acc, i, u) * strict(nil, u, j);
        next[static_cast<std::size_t>(i) * n_ + j] = std::move(s);
      }
    acc.swap(next);
    sign = -sign;
  }
  return out;
}

bool Unitriangular::operator==(const Unitriangular& other) const {
  return n_ == other.n_ && entries_ == other.entries_;
}

int filtration_level(const Unitriangular& g) {
  const int n = g.size();
  for (int offset = 1; offset < n; ++offset)
    for (int i = 0; i + offset < n; ++i)
      if (g.at(i, i + offset) != 0) return offset;
  return n;
}

Unitriangular power(const Unitriangular& g, long long e) {
  if (e < 0) return power(g.inverse(), -e);
  Unitriangular base(g);
  Unitriangular out = Unitriangular::identity(g.size());
  unsigned long long k = static_cast<unsigned long long>(e);
  while (k > 0) {
    if (k & 1ull) out = out * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return out;
}

Unitriangular reduce_mod_lattice(const Unitriangular& g) {
  const int n = g.size();
  Unitriangular out(g);
  for (int offset = 1; offset < n; ++offset) {
    for (int i = 0; i + offset < n; ++i) {
      const int j = i + offset;
      BigInt m = rat_floor(out.at(i, j));
      if (m == 0) continue;
      // right-multiply by the elementary lattice matrix E_{ij}(-m):
      // column j gains -m times column i (rows above i; row i clears itself).
      for (int r = 0; r <= i; ++r)
        out.set(r, j, out.at(r, j) - Rat(m) * (r == i ? Rat(1) : out.at(r, i)));
    }
  }
  return out;
}

Rat dist_to_identity(const Unitriangular& g, int radius) {
  if (radius < 1) throw std::invalid_argument("dist_to_identity: radius must be >= 1");
  const int n = g.size();
  Unitriangular rho = reduce_mod_lattice(g);

  Rat worst_col(0);
  for (int j = 1; j < n; ++j) {
    // choose gamma's column j (entries gamma[t], t < j) minimising the column max
    Rat best(-1);
    std::vector<int> choice(static_cast<std::size_t>(j), -radius);
    while (true) {
      Rat colmax(0);
      for (int i = j - 1; i >= 0; --i) {
        // (rho*gamma)_{ij} = gamma_{ij} + rho_{ij} + sum_{i<t<j} rho_{it} gamma_{tj}
        Rat v = Rat(choice[static_cast<std::size_t>(i)]) + rho.at(i, j);
        for (int t = i + 1; t < j; ++t)
          v += rho.at(i, t) * Rat(choice[static_cast<std::size_t>(t)]);
        Rat av = v < 0 ? -v : v;
        if (av > colmax) colmax = av;
        if (best >= 0 && colmax >= best) break;  // cannot improve this choice
      }
      if (best < 0 || colmax < best) best = colmax;
      // next assignment
      int pos = 0;
      while (pos < j && choice[static_cast<std::size_t>(pos)] == radius) {
        choice[static_cast<std::size_t>(pos)] = -radius;
        ++pos;
      }
      if (pos == j) break;
      ++choice[static_cast<std::size_t>(pos)];
    }
    if (best > worst_col) worst_col = best;
  }
  return worst_col;
}

Unitriangular orbit_value(const Unitriangular& g, long long e) {
  return reduce_mod_lattice(power(g, e));
}

TorusPoint project_abelian(const Unitriangular& g) {
  std::vector<Rat> coords;
  coords.reserve(static_cast<std::size_t>(g.size() - 1));
  for (int i = 0; i + 1 < g.size(); ++i) coords.push_back(mod_one(g.at(i, i + 1)));
  return TorusPoint(std::move(coords));
}

}  // namespace nilbohr
