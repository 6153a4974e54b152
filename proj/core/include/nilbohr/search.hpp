#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilbohr/block_sequence.hpp"
#include "nilbohr/index_set.hpp"
#include "nilbohr/torus_poly.hpp"
#include "nilbohr/unitriangular.hpp"

namespace nilbohr {

/// Witness record of a search. When a witness is present its value is <= the
/// requested epsilon; when absent, `exhaustive` says whether every candidate
/// in the truncation was enumerated (brute-force engines) or the search was
/// heuristic (staged and perturbation engines). `sets_examined` and
/// `canonical_rank` are independent of the worker count.
struct SearchOutcome {
  std::optional<IndexSet> witness;
  std::optional<BlockSequence> block_witness;
  Rat value{0};       // value of the witness when present
  Rat best_value{0};  // min value over the canonical prefix examined
  std::uint64_t sets_examined = 0;
  std::uint64_t canonical_rank = 0;
  bool exhaustive = false;
  bool exploratory = false;  // ran below the theorem's gap bound
};

/// Finite sums over k-syndetic index sets, clipped to [1..bound]: the sorted
/// distinct values of sum(n_i, i in alpha) over alpha in S_k within the
/// truncation, pruned by partial sums (all n_i are positive).
std::vector<long long> sg_enumerate(const std::vector<long long>& n, int k,
                                    long long bound);

/// First alpha in canonical order among the k-syndetic subsets of [1..depth]
/// with dist(p(n_alpha), Z) <= epsilon; exact arithmetic throughout. With no
/// witness the outcome is exhaustive. The run is flagged exploratory when
/// k < deg p, below the theorem's regime.
SearchOutcome search_polynomial_recurrence(const RationalPolynomial& p,
                                           const std::vector<long long>& n, int k,
                                           const Rat& epsilon, int depth,
                                           int workers = 1);

/// First alpha in canonical order with
/// dist_to_identity(orbit_value(g, n_alpha)) <= epsilon. Flagged exploratory
/// when k is below binom(size, 2), the gap bound for (size-1)-step groups.
SearchOutcome search_orbit_recurrence(const Unitriangular& g,
                                      const std::vector<long long>& n, int k,
                                      const Rat& epsilon, int depth, int workers = 1);

/// Two-stage heuristic mirroring the inductive proof shape: stage one scans
/// for candidates whose abelianised orbit is already within epsilon (a sound
/// filter: the abelian norm never exceeds the full metric), stage two
/// evaluates the full metric on the pool and on k-syndetic unions of disjoint
/// pool members. Results are re-verified with dist_to_identity; absence is
/// never exhaustive. sets_examined counts full-metric evaluations only, the
/// currency shared with the exhaustive engine.
SearchOutcome search_orbit_staged(const Unitriangular& g, const std::vector<long long>& n,
                                  int k, const Rat& epsilon, int depth,
                                  int pool_size = 32);

struct SharpnessReport {
  bool in_sharpness_regime = false;  // l >= k - d + 2
  std::vector<Rat> block_values;     // f(alpha_i), one entry per block
  bool all_half_from_l = true;       // f(alpha_i) = 1/2 exactly for i >= max(l,1)
  bool covering_ok = true;  // every gamma in alpha_i (i >= max(l,1)) with diam <= k has size <= d
  Rat min_norm;              // over beta in S_l within the truncation
  Rat max_norm;
  std::optional<IndexSet> argmin_beta;
  std::uint64_t betas_checked = 0;
};

/// Evaluates the alternating-half polynomial of parameters (k, d) over a
/// block sequence required to map S_l to S_k (std::domain_error otherwise):
/// tabulates per-block values, checks the covering property behind the exact
/// value 1/2, and reports the min/max of |f| over all selections in S_l.
SharpnessReport verify_sharpness(int k, int d, int l, const BlockSequence& b);

struct DivisibleBlocksResult {
  std::optional<BlockSequence> blocks;
  // prefix-sum residue frequencies per residue stream, for diagnostics
  std::vector<std::map<long long, int>> residue_stats;
  std::string note;
};

/// Searches for a block sequence of k-syndetic blocks mapping S_k to S_k with
/// every selected union's sum divisible by m. Greedy residue pigeonhole: each
/// residue stream r, r+k, r+2k, ... is cut where its prefix sums repeat their
/// most frequent residue mod m, blocks take chunks round-robin, and the
/// result is verified (block sums, syndeticity, morphism) before being
/// returned. Absence is reported with the residue statistics, never thrown.
DivisibleBlocksResult find_divisible_blocks(const std::vector<long long>& n, int k,
                                            long long m, int target_length);

/// One local-search move of the pattern-perturbation engine: elements
/// adjoined at a window occurrence, split across the blocks of kappa, with
/// the exact induced change per tracked selection.
struct PerturbationMove {
  int alignment = 0;                    // first active block of the window
  int position = 0;                     // window position n (multiple of k)
  IndexSet inserted;                    // adjoined elements, absolute
  std::map<int, IndexSet> assignment;   // block index -> adjoined elements
  std::vector<TorusPoint> effect;       // per tracked selection, aligned
};

struct PerturbationTrace {
  std::vector<PerturbationMove> applied;
  std::uint64_t candidates_evaluated = 0;
};

/// Greedy local search over insertion moves: starts from
/// generate_generic_blocks, repeatedly applies the move that most lowers the
/// max over tracked selections of |f(union)|, and stops at epsilon, at the
/// move budget, or when no move improves. Requires f in stable form at k, and
/// l <= k - deg f - 1 (std::invalid_argument otherwise); every tracked
/// selection must be l-syndetic. The final values are recomputed from scratch
/// and must agree with the incrementally maintained ones.
SearchOutcome perturbation_search(const TorusPolynomial& f, int k, int l,
                                  const std::vector<IndexSet>& tracked,
                                  const Rat& epsilon, int budget,
                                  PerturbationTrace* trace = nullptr);

}  // namespace nilbohr
