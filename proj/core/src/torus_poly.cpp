#include "nilbohr/torus_poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace nilbohr {

TorusPoint::TorusPoint(std::vector<Rat> coords) : coords_(std::move(coords)) {
  for (auto& c : coords_) c = mod_one(c);
}

TorusPoint TorusPoint::zero(int m) {
  return TorusPoint(std::vector<Rat>(static_cast<std::size_t>(m), Rat(0)));
}

bool TorusPoint::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

TorusPoint TorusPoint::operator+(const TorusPoint& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("TorusPoint: dimension mismatch");
  std::vector<Rat> out(coords_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod_one(out[i] + other.coords_[i]);
  return TorusPoint(std::move(out));
}

TorusPoint TorusPoint::operator-(const TorusPoint& other) const {
  return *this + other.negated();
}

TorusPoint TorusPoint::negated() const {
  std::vector<Rat> out(coords_);
  for (auto& c : out) c = mod_one(-c);
  return TorusPoint(std::move(out));
}

TorusPoint TorusPoint::scaled(const BigInt& factor) const {
  std::vector<Rat> out(coords_);
  for (auto& c : out) c = mod_one(c * Rat(factor));
  return TorusPoint(std::move(out));
}

Rat TorusPoint::norm() const {
  Rat best(0);
  for (const auto& c : coords_) best = std::max(best, torus_coord_dist(c));
  return best;
}

namespace {

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
  std::vector<int> out;
  for (int x : a.elements())
    if (!b.contains(x)) out.push_back(x);
  return IndexSet(out);
}

IndexSet set_intersect(const IndexSet& a, const IndexSet& b) {
  std::vector<int> out;
  for (int x : a.elements())
    if (b.contains(x)) out.push_back(x);
  return IndexSet(out);
}

}  // namespace

TorusPolynomial::TorusPolynomial(int dim, int degree, CoeffMap coeffs)
    : dim_(dim), degree_(degree), coeffs_(std::move(coeffs)) {
  if (dim_ < 1) throw std::invalid_argument("TorusPolynomial: dimension must be >= 1");
  if (degree_ < 0) throw std::invalid_argument("TorusPolynomial: degree must be >= 0");
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second.dim() != dim_)
      throw std::invalid_argument("TorusPolynomial: coefficient dimension mismatch");
    if (it->first.size() > degree_)
      throw std::invalid_argument("TorusPolynomial: support exceeds declared degree");
    if (it->second.is_zero())
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

TorusPolynomial TorusPolynomial::zero(int dim, int degree) {
  return TorusPolynomial(dim, degree, {});
}

TorusPoint TorusPolynomial::coeff(const IndexSet& gamma) const {
  auto it = coeffs_.find(gamma);
  return it == coeffs_.end() ? TorusPoint::zero(dim_) : it->second;
}

int TorusPolynomial::support_max() const {
  int m = 0;
  for (const auto& [gamma, a] : coeffs_) {
    (void)a;
    if (!gamma.empty()) m = std::max(m, gamma.max());
  }
  return m;
}

bool TorusPolynomial::operator==(const TorusPolynomial& other) const {
  return dim_ == other.dim_ && degree_ == other.degree_ && coeffs_ == other.coeffs_;
}

TorusPoint evaluate(const TorusPolynomial& f, const IndexSet& a) {
  TorusPoint acc = TorusPoint::zero(f.dim());
  for (const auto& [gamma, value] : f.coeffs())
    if (gamma.is_subset_of(a)) acc = acc + value;
  return acc;
}

TorusPolynomial discrete_difference(const TorusPolynomial& f, const IndexSet& beta) {
  if (beta.empty()) throw std::domain_error("discrete_difference: beta must be non-empty");
  TorusPolynomial::CoeffMap out;
  for (const auto& [gp, value] : f.coeffs()) {
    IndexSet delta = set_intersect(gp, beta);
    if (delta.empty()) continue;
    IndexSet gamma = set_minus(gp, beta);
    auto [it, inserted] = out.emplace(gamma, value);
    if (!inserted) it->second = it->second + value;
  }
  return TorusPolynomial(f.dim(), std::max(f.degree() - 1, 0), std::move(out));
}

namespace {

// Inclusion-exclusion over every subset of the common ground set. Requires a
// value for each subset, including the empty one.
std::map<IndexSet, TorusPoint> mobius_coefficients(
    const std::map<IndexSet, TorusPoint>& values, int dim) {
  IndexSet ground;
  for (const auto& [key, v] : values) {
    (void)v;
    ground = ground.set_union(key);
  }
  const auto& g = ground.elements();
  const int n = ground.size();
  if (n > 24) throw std::invalid_argument("coefficient recovery: ground set too large");
  const std::uint32_t full = (n == 0) ? 0 : ((1u << n) - 1);

  std::vector<const TorusPoint*> by_mask(full + 1, nullptr);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    std::vector<int> elems;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) elems.push_back(g[static_cast<std::size_t>(i)]);
    auto it = values.find(IndexSet(elems));
    if (it == values.end())
      throw std::invalid_argument("coefficient recovery: missing value for a subset");
    by_mask[mask] = &it->second;
    if (mask == full) break;  // avoid overflow when n == 32 (n <= 24 anyway)
  }

  std::map<IndexSet, TorusPoint> out;
  for (std::uint32_t mask = 0;; ++mask) {
    TorusPoint acc = TorusPoint::zero(dim);
    int bits = __builtin_popcount(mask);
    // sum over submasks, sign by |gamma \ delta|
    std::uint32_t sub = mask;
    while (true) {
      int sign = ((bits - __builtin_popcount(sub)) % 2 == 0) ? 1 : -1;
      acc = (sign > 0) ? acc + *by_mask[sub] : acc - *by_mask[sub];
      if (sub == 0) break;
      sub = (sub - 1) & mask;
    }
    if (!acc.is_zero()) {
      std::vector<int> elems;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) elems.push_back(g[static_cast<std::size_t>(i)]);
      out.emplace(IndexSet(elems), std::move(acc));
    }
    if (mask == full) break;
  }
  return out;
}

}  // namespace

TorusPolynomial coefficients_from_values(const std::map<IndexSet, TorusPoint>& values,
                                         int degree, int dim) {
  auto all = mobius_coefficients(values, dim);
  TorusPolynomial::CoeffMap kept;
  for (auto& [gamma, a] : all)
    if (gamma.size() <= degree) kept.emplace(gamma, std::move(a));
  return TorusPolynomial(dim, degree, std::move(kept));
}

RationalPolynomial::RationalPolynomial(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat RationalPolynomial::operator()(const BigInt& x) const {
  Rat acc(0);
  Rat rx(x);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * rx + *it;
  return acc * rx;
}

TorusPolynomial lift_integer_polynomial(const RationalPolynomial& p,
                                        const std::vector<long long>& n, int window,
                                        int degree) {
  if (window < 0 || window > static_cast<int>(n.size()))
    throw std::invalid_argument("lift_integer_polynomial: window exceeds the sequence");
  if (p.degree() > degree)
    throw std::invalid_argument("lift_integer_polynomial: declared degree below deg p");

  std::map<IndexSet, TorusPoint> values;
  const std::uint32_t full = (window == 0) ? 0 : ((1u << window) - 1);
  for (std::uint32_t mask = 0;; ++mask) {
    BigInt sum = 0;
    std::vector<int> elems;
    for (int i = 0; i < window; ++i)
      if (mask & (1u << i)) {
        elems.push_back(i + 1);
        sum += n[static_cast<std::size_t>(i)];
      }
    values.emplace(IndexSet(elems), TorusPoint({mod_one(p(sum))}));
    if (mask == full) break;
  }

  auto all = mobius_coefficients(values, 1);
  TorusPolynomial::CoeffMap kept;
  for (auto& [gamma, a] : all) {
    if (gamma.size() > degree)
      throw std::logic_error("lift_integer_polynomial: non-zero coefficient beyond degree");
    kept.emplace(gamma, std::move(a));
  }
  return TorusPolynomial(1, degree, std::move(kept));
}

TorusPolynomial restrict(const TorusPolynomial& f, const BlockSequence& b) {
  IndexSet covered;
  for (const auto& blk : b.blocks()) covered = covered.set_union(blk);
  for (const auto& [gamma, a] : f.coeffs()) {
    (void)a;
    if (!gamma.is_subset_of(covered))
      throw std::out_of_range("restrict: support escapes the block truncation");
  }
  std::map<IndexSet, TorusPoint> values;
  const int len = b.length();
  if (len > 24) throw std::invalid_argument("restrict: truncation too large");
  const std::uint32_t full = (len == 0) ? 0 : ((1u << len) - 1);
  for (std::uint32_t mask = 0;; ++mask) {
    std::vector<int> elems;
    for (int i = 0; i < len; ++i)
      if (mask & (1u << i)) elems.push_back(i + 1);
    values.emplace(IndexSet(elems), evaluate(f, blocks_union(b, IndexSet(elems))));
    if (mask == full) break;
  }
  auto all = mobius_coefficients(values, f.dim());
  TorusPolynomial::CoeffMap kept;
  for (auto& [gamma, a] : all) {
    if (gamma.size() > f.degree())
      throw std::logic_error("restrict: restriction increased the degree");
    kept.emplace(gamma, std::move(a));
  }
  return TorusPolynomial(f.dim(), f.degree(), std::move(kept));
}

namespace {

std::string set_str(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.elements().size(); ++i) {
    if (i) os << ',';
    os << s.elements()[i];
  }
  os << '}';
  return os.str();
}

}  // namespace

StableFormReport is_stable_form(const TorusPolynomial& f, int k) {
  if (k < 1) throw std::invalid_argument("is_stable_form: k must be >= 1");
  StableFormReport report;
  int w = f.support_max();
  w = (w == 0) ? k : ((w + k - 1) / k) * k;

  std::map<IndexSet, bool> candidates;  // gammas whose k-shift must be compared
  for (const auto& [gamma, a] : f.coeffs()) {
    (void)a;
    if (gamma.empty()) continue;
    if (diameter(gamma) > k) {
      report.ok = false;
      report.violations.push_back("coefficient at " + set_str(gamma) +
                                  " has diameter > " + std::to_string(k));
      continue;
    }
    candidates.emplace(gamma, true);
    if (gamma.min() > k) candidates.emplace(gamma.shifted(-k), true);
  }
  for (const auto& [gamma, one] : candidates) {
    (void)one;
    if (gamma.max() + k > w) continue;
    IndexSet shifted = gamma.shifted(k);
    if (!(f.coeff(gamma) == f.coeff(shifted))) {
      report.ok = false;
      report.violations.push_back("coefficients at " + set_str(gamma) + " and " +
                                  set_str(shifted) + " differ");
    }
  }
  return report;
}

StableCoefficients::StableCoefficients(const TorusPolynomial& f, int k)
    : dim_(f.dim()), degree_(f.degree()), k_(k), constant_(f.coeff(IndexSet{})) {
  auto report = is_stable_form(f, k);
  if (!report.ok)
    throw std::invalid_argument("StableCoefficients: polynomial is not in stable form");
  for (const auto& [gamma, a] : f.coeffs()) {
    if (gamma.empty()) continue;
    int shift = -((gamma.min() - 1) / k) * k;
    IndexSet rep = gamma.shifted(shift);
    auto [it, inserted] = reps_.emplace(rep, a);
    if (!inserted && !(it->second == a))
      throw std::invalid_argument("StableCoefficients: inconsistent shifts");
  }
}

StableCoefficients::StableCoefficients(int dim, int degree, int k,
                                       std::map<IndexSet, TorusPoint> representatives)
    : dim_(dim), degree_(degree), k_(k), constant_(TorusPoint::zero(dim)),
      reps_(std::move(representatives)) {
  for (const auto& [gamma, a] : reps_) {
    (void)a;
    if (gamma.empty() || gamma.min() > k_)
      throw std::invalid_argument("StableCoefficients: representative min must lie in [1..k]");
    if (diameter(gamma) > k_ || gamma.size() > degree_)
      throw std::invalid_argument("StableCoefficients: representative out of range");
  }
}

TorusPoint StableCoefficients::coeff(const IndexSet& gamma) const {
  if (gamma.empty() || gamma.size() > degree_ || diameter(gamma) > k_)
    return TorusPoint::zero(dim_);
  int shift = -((gamma.min() - 1) / k_) * k_;
  auto it = reps_.find(gamma.shifted(shift));
  return it == reps_.end() ? TorusPoint::zero(dim_) : it->second;
}

TorusPoint StableCoefficients::evaluate(const IndexSet& a) const {
  TorusPoint acc = constant_;
  const auto& elems = a.elements();
  std::vector<int> local;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const int m = elems[i];
    local.clear();
    for (std::size_t j = i + 1; j < elems.size() && elems[j] <= m + k_; ++j)
      local.push_back(elems[j]);
    // all gamma with min m: {m} plus a subset of the k-window above m
    const int t = static_cast<int>(local.size());
    for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
      if (__builtin_popcount(mask) + 1 > degree_) continue;
      std::vector<int> gamma{m};
      for (int b = 0; b < t; ++b)
        if (mask & (1u << b)) gamma.push_back(local[static_cast<std::size_t>(b)]);
      acc = acc + coeff(IndexSet(gamma));
    }
  }
  return acc;
}

TorusPoint StableCoefficients::insertion_delta(const IndexSet& a,
                                               const IndexSet& inserted) const {
  if (inserted.empty()) return TorusPoint::zero(dim_);
  if (!a.disjoint_with(inserted))
    throw std::invalid_argument("insertion_delta: operands must be disjoint");
  IndexSet merged = a.disjoint_union(inserted);
  const int lo = std::max(1, inserted.min() - k_);
  const int hi = inserted.max() + k_;
  IndexSet local = merged.slice(lo, hi);

  TorusPoint acc = TorusPoint::zero(dim_);
  const auto& elems = local.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const int m = elems[i];
    std::vector<int> window;
    for (std::size_t j = i + 1; j < elems.size() && elems[j] <= m + k_; ++j)
      window.push_back(elems[j]);
    const bool m_inserted = inserted.contains(m);
    const int t = static_cast<int>(window.size());
    for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
      if (__builtin_popcount(mask) + 1 > degree_) continue;
      bool touches = m_inserted;
      std::vector<int> gamma{m};
      for (int b = 0; b < t; ++b)
        if (mask & (1u << b)) {
          int x = window[static_cast<std::size_t>(b)];
          gamma.push_back(x);
          touches = touches || inserted.contains(x);
        }
      if (!touches) continue;
      acc = acc + coeff(IndexSet(gamma));
    }
  }
  return acc;
}

TorusPolynomial StableCoefficients::materialize(int window) const {
  if (window < k_ || window % k_ != 0)
    throw std::invalid_argument("materialize: window must be a positive multiple of k");
  TorusPolynomial::CoeffMap coeffs;
  if (!constant_.is_zero()) coeffs.emplace(IndexSet{}, constant_);
  for (const auto& [rep, a] : reps_) {
    for (int shift = 0; rep.max() + shift <= window; shift += k_)
      coeffs.emplace(rep.shifted(shift), a);
  }
  return TorusPolynomial(dim_, degree_, std::move(coeffs));
}

RestrictionInvarianceReport check_restriction_invariance(const TorusPolynomial& f, int k,
                                                         int window, const Rat& tol) {
  auto stable = is_stable_form(f, k);
  if (!stable.ok)
    throw std::invalid_argument("check_restriction_invariance: input not in stable form");
  if (tol < 0) throw std::invalid_argument("check_restriction_invariance: negative tol");

  RestrictionInvarianceReport report;
  const int max_violations = 32;

  // Anchors i_j = j + k*s_j with non-decreasing slack, blocks inside [1..window].
  std::vector<int> slack;
  std::function<void(int)> extend = [&](int minv) {
    const int j = static_cast<int>(slack.size()) + 1;  // next anchor index (1-based)
    for (int v = minv;; ++v) {
      int anchor = j + k * v;
      if (anchor > window + k) break;
      slack.push_back(v);
      if (static_cast<int>(slack.size()) >= k + 1) {
        std::vector<int> anchors(slack.size());
        for (std::size_t t = 0; t < slack.size(); ++t)
          anchors[t] = static_cast<int>(t + 1) + k * slack[t];
        BlockSequence bs = canonical_blocks(k, anchors);
        if (bs.max_element() <= window) {
          ++report.restrictions_checked;
          const int len = bs.length();
          for (const auto& beta : enumerate_syndetic(len, len)) {  // all non-empty subsets
            TorusPoint lhs = evaluate(f, blocks_union(bs, beta));
            TorusPoint rhs = evaluate(f, beta);
            if ((lhs - rhs).norm() > tol) {
              report.ok = false;
              if (static_cast<int>(report.violations.size()) < max_violations)
                report.violations.push_back("restriction with anchors slack varies at beta=" +
                                            set_str(beta));
            }
          }
        }
      }
      extend(v);
      slack.pop_back();
    }
  };
  extend(0);
  return report;
}

TorusPolynomial alternating_half_poly(int k, int d, int window) {
  if (d < 1 || d > k) throw std::invalid_argument("alternating_half_poly: need 1 <= d <= k");
  if (window == 0) window = 4 * k;
  if (window < k || window % k != 0)
    throw std::invalid_argument("alternating_half_poly: window must be a multiple of k");
  return alternating_half_coeffs(k, d).materialize(window);
}

StableCoefficients alternating_half_coeffs(int k, int d) {
  if (d < 1 || d > k) throw std::invalid_argument("alternating_half_coeffs: need 1 <= d <= k");
  std::map<IndexSet, TorusPoint> reps;
  const TorusPoint half({Rat(1, 2)});
  // representatives: min in [1..k], the rest within k above the min
  std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& gamma, int last) {
    reps.emplace(IndexSet(gamma), half);
    if (static_cast<int>(gamma.size()) >= d) return;
    for (int x = last + 1; x <= gamma.front() + k; ++x) {
      gamma.push_back(x);
      grow(gamma, x);
      gamma.pop_back();
    }
  };
  for (int m = 1; m <= k; ++m) {
    std::vector<int> gamma{m};
    grow(gamma, m);
  }
  return StableCoefficients(1, d, k, std::move(reps));
}

}  // namespace nilbohr
