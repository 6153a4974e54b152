#pragma once

#include <vector>

#include "nilbohr/rational.hpp"

namespace nilbohr {

/// An exact point of the m-torus: m rationals, each reduced into [0,1).
class TorusPoint {
public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<Rat> coords);
  static TorusPoint zero(int m);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<Rat>& coords() const { return coords_; }
  const Rat& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  bool is_zero() const;

  TorusPoint operator+(const TorusPoint& other) const;
  TorusPoint operator-(const TorusPoint& other) const;
  TorusPoint negated() const;
  TorusPoint scaled(const BigInt& factor) const;

  /// Max over coordinates of the distance to the nearest integer.
  Rat norm() const;

  bool operator==(const TorusPoint& other) const { return coords_ == other.coords_; }
  bool operator!=(const TorusPoint& other) const { return !(*this == other); }

private:
  std::vector<Rat> coords_;
};

}  // namespace nilbohr
