#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilbohr/index_set.hpp"

namespace nilbohr {

/// A finite list of pairwise disjoint, non-empty index sets: the desk-scale
/// truncation of an infinite sequence of blocks. Induces the partial-semigroup
/// morphism beta -> union of the selected blocks.
class BlockSequence {
public:
  BlockSequence() = default;
  explicit BlockSequence(std::vector<IndexSet> blocks);

  int length() const { return static_cast<int>(blocks_.size()); }
  const std::vector<IndexSet>& blocks() const { return blocks_; }
  /// 1-based access, matching index-set elements.
  const IndexSet& block(int i) const;

  /// Largest element appearing in any block; 0 when there are no blocks.
  int max_element() const;

  bool operator==(const BlockSequence& other) const { return blocks_ == other.blocks_; }

private:
  std::vector<IndexSet> blocks_;
};

/// Union of the blocks selected by beta (1-based indices). The empty selection
/// yields the empty set. Throws std::out_of_range if beta reaches beyond the
/// truncation; a partial union is never returned.
IndexSet blocks_union(const BlockSequence& b, const IndexSet& beta);

/// True iff the morphism beta -> union maps every l-syndetic subset of
/// [1..length] to a k-syndetic set. Checked by exhaustive enumeration over the
/// truncation.
bool maps_syndetic(const BlockSequence& b, int l, int k);

/// Well-formedness at parameters (k, l):
///   (1) each block has min == max (mod k),
///   (2) min block[i+l+1] > max block[i] + k for all valid i,
///   (3) the union morphism maps l-syndetic sets to k-syndetic sets.
bool is_well_formed(const BlockSequence& b, int k, int l);

/// A window-local slot configuration: `length` consecutive positions, one slot
/// per block index it may be matched against. Non-empty slots are k-syndetic
/// subsets of [1..length]; slots are pairwise disjoint.
class Pattern {
public:
  Pattern(int length, int k, std::vector<IndexSet> slots);

  int length() const { return length_; }
  int syndeticity() const { return k_; }
  int slot_count() const { return static_cast<int>(slots_.size()); }
  const IndexSet& slot(int i) const;  // 1-based; empty set beyond the stored list
  const std::vector<IndexSet>& slots() const { return slots_; }

private:
  int length_ = 0;
  int k_ = 1;
  std::vector<IndexSet> slots_;
  static const IndexSet empty_slot_;
};

/// Positions n == 0 (mod k) where the pattern occurs in the block sequence:
/// for every block index i, (block[i] - n) intersected with [1..length] must
/// equal slot (i - slot_offset) exactly (the empty set for slot indices
/// outside the stored list). Blocks must avoid the window except as
/// prescribed. Returned positions are strictly increasing.
std::vector<int> pattern_occurrences(const BlockSequence& b, const Pattern& p,
                                     int slot_offset = 0);

/// Blocks of the canonical interleaved family: block j is the step-k
/// progression {i_j, i_j + k, ..., i_{j+k} - k}, where the anchor sequence is
/// strictly increasing with i_j == j (mod k). These families map k-syndetic
/// sets to k-syndetic sets and are well-formed at (k, l = k).
BlockSequence canonical_blocks(int k, const std::vector<int>& anchors);

/// The documented finite family used by exhaustive checks: all canonical
/// block sequences with `block_count` blocks whose anchors are
/// i_j = j + k * s_j for a non-decreasing slack vector s with entries in
/// [0, max_slack].
std::vector<BlockSequence> canonical_block_family(int k, int block_count, int max_slack);

struct GenericityReport {
  bool ok = true;
  // One line per pattern bucket that fell short of the requested count.
  std::vector<std::string> shortfalls;
  std::uint64_t patterns_seen = 0;
  std::uint64_t bounded_patterns = 0;
};

/// Direct-counting certificate behind generate_generic_blocks: slides windows
/// of length m over the sequence, buckets the observed window contents, and
/// requires every bucket to either be classified bounded (some non-empty slot
/// forces a global max or min of its block: its last element is followed by
/// >= k free window positions, or its first element is preceded by >= k
/// window positions) or to occur at least n times. Shorter window contents
/// are certified through their length-m extensions.
GenericityReport certify_generic(const BlockSequence& b, int k, int l, int m, int n);

/// A well-formed block sequence built from long step-k progressions whose
/// consecutive blocks interleave on distinct residues; every window content of
/// length <= m that is not forced-bounded recurs at least n times. The result
/// is certified by is_well_formed and certify_generic before being returned
/// (never assumed). Throws std::invalid_argument on infeasible parameters
/// (l >= k, m not a multiple of k).
BlockSequence generate_generic_blocks(int k, int l, int m, int n, int block_count = 8);

}  // namespace nilbohr
