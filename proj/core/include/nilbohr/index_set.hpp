#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace nilbohr {

/// A finite set of positive integers, the universal index object. The empty
/// set is a valid value (evaluation of torus polynomials at the empty set is
/// well defined everywhere).
///
/// Elements are kept strictly increasing; the constructor sorts its input and
/// rejects duplicates and non-positive entries.
class IndexSet {
public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> elems);
  IndexSet(std::initializer_list<int> elems) : IndexSet(std::vector<int>(elems)) {}

  const std::vector<int>& elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  int size() const { return static_cast<int>(elems_.size()); }
  int min() const;  // throws on empty
  int max() const;  // throws on empty

  bool contains(int x) const;
  bool is_subset_of(const IndexSet& other) const;
  bool disjoint_with(const IndexSet& other) const;

  /// Set union; throws std::invalid_argument if the operands intersect.
  /// (The index family is a partial semigroup: unions are defined only for
  /// disjoint operands.)
  IndexSet disjoint_union(const IndexSet& other) const;

  /// Plain set union, no disjointness requirement.
  IndexSet set_union(const IndexSet& other) const;

  /// Elements shifted by delta; throws if a shifted element would be < 1.
  IndexSet shifted(int delta) const;

  /// Elements x with lo <= x <= hi.
  IndexSet slice(int lo, int hi) const;

  bool operator==(const IndexSet& other) const { return elems_ == other.elems_; }
  bool operator!=(const IndexSet& other) const { return !(*this == other); }
  bool operator<(const IndexSet& other) const { return elems_ < other.elems_; }  // plain lex

private:
  std::vector<int> elems_;
};

/// Consecutive differences of a non-empty set; empty list for singletons.
/// Throws std::domain_error on the empty set.
std::vector<int> gaps(const IndexSet& a);

/// True iff every gap of `a` is <= k. The empty set and singletons are
/// k-syndetic for every k >= 0 (k = 0 admits exactly those).
bool is_syndetic(const IndexSet& a, int k);

/// max - min of a non-empty set. Throws std::domain_error on the empty set.
int diameter(const IndexSet& a);

/// Canonical enumeration order: ascending cardinality, ties broken by
/// lexicographic comparison of the ascending element lists. Every search in
/// this library ranks candidates by this order, which makes results
/// reproducible across runs and shard counts.
bool canonical_less(const IndexSet& a, const IndexSet& b);

/// All non-empty k-syndetic subsets of [1..n], in canonical order.
std::vector<IndexSet> enumerate_syndetic(int n, int k);

/// Streaming form: visit(rank, set) for each set in canonical order; return
/// false from the visitor to stop early.
void for_each_syndetic(int n, int k,
                       const std::function<bool(std::uint64_t, const IndexSet&)>& visit);

/// Number of non-empty k-syndetic subsets of [1..n].
std::uint64_t count_syndetic(int n, int k);

}  // namespace nilbohr
