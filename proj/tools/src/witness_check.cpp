#include "witness_check.hpp"

#include <stdexcept>

namespace nilbohr::check {

namespace {

Rat nearest_int_dist(const Rat& x) {
  BigInt f = rat_floor(x);
  Rat lo = x - Rat(f);
  Rat hi = Rat(f + 1) - x;
  return lo <= hi ? lo : hi;
}

using Mat = std::vector<std::vector<Rat>>;

Mat identity(int n) {
  Mat m(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  Mat out = identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat s(0);
      for (int t = i; t <= j; ++t)
        s += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] *
             b[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(s);
    }
  return out;
}

Mat invert(const Mat& a) {
  // Solve a * x = I column by column; unitriangular back-substitution.
  const int n = static_cast<int>(a.size());
  Mat x = identity(n);
  for (int j = 0; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      Rat s(0);
      for (int t = i + 1; t <= j; ++t)
        s += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] *
             x[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -s;
    }
  return x;
}

// Column-wise reduction, rows processed downward-from-the-diagonal (a
// different sweep than the library's offset-major one; the reduced
// representative is unique, so results must agree).
Mat reduce(Mat g) {
  const int n = static_cast<int>(g.size());
  for (int j = 1; j < n; ++j) {
    for (int i = j - 1; i >= 0; --i) {
      BigInt f = rat_floor(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      if (f == 0) continue;
      // right-multiply by E_{ij}(-f): column j -= f * column i
      for (int r = 0; r <= i; ++r) {
        Rat colv = (r == i) ? Rat(1) : g[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
        g[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= Rat(f) * colv;
      }
    }
  }
  return g;
}

}  // namespace

Rat poly_witness_value(const std::vector<Rat>& poly_coeffs,
                       const std::vector<long long>& n, const std::vector<int>& alpha) {
  BigInt x = 0;
  for (int i : alpha) {
    if (i < 1 || i > static_cast<int>(n.size()))
      throw std::invalid_argument("witness element outside the sequence");
    x += n[static_cast<std::size_t>(i - 1)];
  }
  Rat acc(0);
  for (auto it = poly_coeffs.rbegin(); it != poly_coeffs.rend(); ++it)
    acc = acc * Rat(x) + *it;
  acc *= Rat(x);
  return nearest_int_dist(acc);
}

Rat orbit_witness_value(const Mat& g, long long e) {
  const int n = static_cast<int>(g.size());
  Mat base = g;
  long long steps = e;
  if (steps < 0) {
    base = invert(base);
    steps = -steps;
  }
  Mat acc = identity(n);
  for (long long s = 0; s < steps; ++s) acc = mul(acc, base);  // plain iteration
  Mat rho = reduce(std::move(acc));

  // full grid over integer gamma with entries in [-2, 2]
  const int radius = 2;
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cells.emplace_back(i, j);
  std::vector<int> choice(cells.size(), -radius);
  Rat best(-1);
  while (true) {
    Mat gamma = identity(n);
    for (std::size_t c = 0; c < cells.size(); ++c)
      gamma[static_cast<std::size_t>(cells[c].first)]
           [static_cast<std::size_t>(cells[c].second)] = choice[c];
    Mat prod = mul(rho, gamma);
    Rat worst(0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Rat v = prod[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
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

bool valid_candidate(const std::vector<int>& alpha, int k, int depth) {
  if (alpha.empty()) return false;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 1 || alpha[i] > depth) return false;
    if (i > 0 && (alpha[i] <= alpha[i - 1] || alpha[i] - alpha[i - 1] > k)) return false;
  }
  return true;
}

}  // namespace nilbohr::check
