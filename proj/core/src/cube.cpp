#include "nilbohr/cube.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilbohr {

SetParallelepiped::SetParallelepiped(IndexSet base, std::vector<IndexSet> sides)
    : base_(std::move(base)), sides_(std::move(sides)) {
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    if (sides_[i].empty())
      throw std::invalid_argument("SetParallelepiped: sides must be non-empty");
    if (!sides_[i].disjoint_with(base_))
      throw std::invalid_argument("SetParallelepiped: side meets the base");
    for (std::size_t j = i + 1; j < sides_.size(); ++j)
      if (!sides_[i].disjoint_with(sides_[j]))
        throw std::invalid_argument("SetParallelepiped: sides intersect");
  }
  if (sides_.size() >= 31) throw std::invalid_argument("SetParallelepiped: dimension cap");
}

IndexSet SetParallelepiped::vertex(Vertex omega) const {
  IndexSet v = base_;
  for (std::size_t i = 0; i < sides_.size(); ++i)
    if (omega & (Vertex{1} << i)) v = v.disjoint_union(sides_[i]);
  return v;
}

SetParallelepiped make_parallelepiped(const IndexSet& base,
                                      const std::vector<IndexSet>& sides) {
  return SetParallelepiped(base, sides);
}

TorusCube::TorusCube(int dimension, int degree, std::vector<TorusPoint> values)
    : r_(dimension), degree_(degree), values_(std::move(values)) {
  if (r_ < 1 || r_ > 20) throw std::invalid_argument("TorusCube: bad dimension");
  if (degree_ < 0) throw std::invalid_argument("TorusCube: bad degree");
  if (values_.size() != (std::size_t{1} << r_))
    throw std::invalid_argument("TorusCube: need one value per vertex");
  for (const auto& v : values_)
    if (v.dim() != values_.front().dim())
      throw std::invalid_argument("TorusCube: mixed point dimensions");
}

const TorusPoint& TorusCube::value(Vertex omega) const {
  if (omega >= values_.size()) throw std::out_of_range("TorusCube::value");
  return values_[omega];
}

TorusPoint alternating_sum(const TorusCube& c, const FaceSelector& face) {
  if (face.fixed_values & ~face.fixed)
    throw std::invalid_argument("alternating_sum: fixed_values outside fixed mask");
  const Vertex all = (Vertex{1} << c.dimension()) - 1;
  if (face.fixed & ~all)
    throw std::invalid_argument("alternating_sum: selector outside the cube");
  const Vertex free_mask = all & ~face.fixed;

  TorusPoint acc = TorusPoint::zero(c.point_dim());
  // iterate subsets of the free mask
  Vertex sub = 0;
  while (true) {
    Vertex omega = face.fixed_values | sub;
    const TorusPoint& v = c.value(omega);
    acc = (__builtin_popcount(sub) % 2 == 0) ? acc + v : acc - v;
    if (sub == free_mask) break;
    sub = (sub - free_mask) & free_mask;  // next subset of free_mask
  }
  return acc;
}

bool is_hk_cube_abelian(const TorusCube& c) {
  const int r = c.dimension();
  const int d = c.degree();
  const Vertex all = (Vertex{1} << r) - 1;
  for (Vertex free_mask = 0; free_mask <= all; ++free_mask) {
    if (__builtin_popcount(free_mask) < d + 1) continue;
    const Vertex pinned = all & ~free_mask;
    // all assignments of the pinned coordinates
    Vertex assign = 0;
    while (true) {
      if (!alternating_sum(c, FaceSelector{pinned, assign}).is_zero()) return false;
      if (assign == pinned) break;
      assign = (assign - pinned) & pinned;
    }
  }
  return true;
}

TorusPoint complete_corner_abelian(int r, int degree,
                                   const std::vector<TorusPoint>& partial_values) {
  if (r < degree + 1)
    throw std::invalid_argument("complete_corner_abelian: need r >= degree + 1");
  if (partial_values.size() != (std::size_t{1} << r))
    throw std::invalid_argument("complete_corner_abelian: need one entry per vertex");
  const Vertex corner = (Vertex{1} << r) - 1;
  const int m = partial_values.front().dim();

  std::optional<TorusPoint> result;
  // (d+1)-faces through the corner: pick the free coordinate set F, pin the
  // rest to 1. The corner's sign on such a face is (-1)^{|F|} = (-1)^{d+1}.
  for (Vertex free_mask = 0; free_mask <= corner; ++free_mask) {
    if (__builtin_popcount(free_mask) != degree + 1) continue;
    const Vertex pinned = corner & ~free_mask;
    TorusPoint rest = TorusPoint::zero(m);
    Vertex sub = 0;
    while (true) {
      if (sub != free_mask) {
        const TorusPoint& v = partial_values[pinned | sub];
        rest = (__builtin_popcount(sub) % 2 == 0) ? rest + v : rest - v;
      }
      if (sub == free_mask) break;
      sub = (sub - free_mask) & free_mask;
    }
    // corner value x satisfies rest + (-1)^{d+1} x = 0
    TorusPoint x = ((degree + 1) % 2 == 0) ? rest.negated() : rest;
    if (!result) {
      result = x;
    } else if (!(*result == x)) {
      throw std::invalid_argument("complete_corner_abelian: inconsistent partial cube");
    }
  }
  return *result;
}

std::vector<Vertex> face_order(int r) {
  std::vector<Vertex> order;
  order.reserve(std::size_t{1} << r);
  for (Vertex v = 0; v < (Vertex{1} << r); ++v) order.push_back(v);
  auto reversed = [r](Vertex v) {
    Vertex out = 0;
    for (int i = 0; i < r; ++i)
      if (v & (Vertex{1} << i)) out |= Vertex{1} << (r - 1 - i);
    return out;
  };
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return reversed(a) < reversed(b);
  });
  return order;
}

UnitriangularFactorization hk_factorize_unitriangular(
    const std::vector<Unitriangular>& cube_values) {
  if (cube_values.empty() || (cube_values.size() & (cube_values.size() - 1)) != 0)
    throw std::invalid_argument("hk_factorize_unitriangular: need 2^r entries");
  int r = 0;
  while ((std::size_t{1} << r) < cube_values.size()) ++r;
  const int n = cube_values.front().size();

  UnitriangularFactorization out;
  out.factors.assign(cube_values.size(), Unitriangular::identity(n));
  std::vector<Unitriangular> residual(cube_values);

  for (Vertex omega : face_order(r)) {
    Unitriangular g = residual[omega];
    out.factors[omega] = g;
    if (filtration_level(g) < __builtin_popcount(omega)) out.member = false;
    if (g.is_identity()) continue;
    Unitriangular ginv = g.inverse();
    for (Vertex sigma = 0; sigma < residual.size(); ++sigma)
      if ((sigma & omega) == omega) residual[sigma] = ginv * residual[sigma];
  }
  for (const auto& rem : residual)
    if (!rem.is_identity())
      throw std::logic_error("hk_factorize_unitriangular: residual did not clear");
  return out;
}

std::vector<Unitriangular> build_unitriangular_cube(
    int r, const std::vector<Unitriangular>& factors_by_vertex) {
  if (factors_by_vertex.size() != (std::size_t{1} << r))
    throw std::invalid_argument("build_unitriangular_cube: need 2^r factors");
  const int n = factors_by_vertex.front().size();
  std::vector<Unitriangular> cube(std::size_t{1} << r, Unitriangular::identity(n));
  for (Vertex omega : face_order(r)) {
    const Unitriangular& g = factors_by_vertex[omega];
    for (Vertex sigma = 0; sigma < cube.size(); ++sigma)
      if ((sigma & omega) == omega) cube[sigma] = cube[sigma] * g;
  }
  return cube;
}

}  // namespace nilbohr
