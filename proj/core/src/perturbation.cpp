#include <algorithm>
#include <stdexcept>

#include "nilbohr/search.hpp"

namespace nilbohr {

namespace {

// Window geometry of the greedy engine. Each alignment j0 owns the zone where
// exactly blocks j0..j0+l are live; inside it, every aligned window shows the
// same slot pattern and the middle k-stretch carries the free residues that
// moves may occupy. Consumed windows are spaced a full window apart, so an
// applied insertion never changes the local content of a later one -- which
// also makes the delta of a move type identical at every clean window of its
// alignment (contents and coefficients are both k-shift invariant).
struct AlignmentState {
  int j0 = 1;
  std::vector<int> positions;  // candidate window positions n, ascending
  std::size_t next = 0;

  // positions still usable if each application consumes `spacing`
  int available(int spacing) const {
    if (next >= positions.size()) return 0;
    int count = 1;
    int last = positions[next];
    for (std::size_t i = next + 1; i < positions.size(); ++i) {
      if (positions[i] >= last + spacing) {
        ++count;
        last = positions[i];
      }
    }
    return count;
  }
};

Rat max_norm(const std::vector<TorusPoint>& values) {
  Rat best(0);
  for (const auto& v : values) best = std::max(best, v.norm());
  return best;
}

Rat sum_norm(const std::vector<TorusPoint>& values) {
  Rat total(0);
  for (const auto& v : values) total += v.norm();
  return total;
}

// Non-empty subsets of [1..span] with diameter <= l, in canonical order.
std::vector<IndexSet> kappa_candidates(int span, int l) {
  std::vector<IndexSet> out;
  for (int lo = 1; lo <= span; ++lo) {
    int hi = std::min(span, lo + l);
    std::vector<int> rest;
    for (int x = lo + 1; x <= hi; ++x) rest.push_back(x);
    const int t = static_cast<int>(rest.size());
    for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
      std::vector<int> kappa{lo};
      for (int b = 0; b < t; ++b)
        if (mask & (1u << b)) kappa.push_back(rest[static_cast<std::size_t>(b)]);
      out.emplace_back(kappa);
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

// All ways to split a gamma of n_elems elements into non-empty parts indexed
// by the blocks of kappa (surjections), lexicographic in the assignment.
std::vector<std::vector<int>> surjections(int n_elems, const std::vector<int>& kappa) {
  std::vector<std::vector<int>> out;
  const int t = static_cast<int>(kappa.size());
  if (n_elems < t) return out;
  std::vector<int> assign(static_cast<std::size_t>(n_elems), 0);
  while (true) {
    std::vector<bool> hit(static_cast<std::size_t>(t), false);
    for (int a : assign) hit[static_cast<std::size_t>(a)] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
      std::vector<int> mapped(assign.size());
      for (std::size_t i = 0; i < assign.size(); ++i)
        mapped[i] = kappa[static_cast<std::size_t>(assign[i])];
      out.push_back(std::move(mapped));
    }
    int pos = n_elems - 1;
    while (pos >= 0 && assign[static_cast<std::size_t>(pos)] == t - 1) {
      assign[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++assign[static_cast<std::size_t>(pos)];
  }
  return out;
}

struct MoveType {
  int kappa_index = 0;        // into the kappas list
  int alignment = 1;          // min of kappa
  std::vector<int> offsets;   // gamma, window-relative (middle stretch)
  std::vector<int> blocks;    // receiving block per gamma element
  std::vector<TorusPoint> delta;  // per tracked selection, for one application
};

}  // namespace

SearchOutcome perturbation_search(const TorusPolynomial& f, int k, int l,
                                  const std::vector<IndexSet>& tracked,
                                  const Rat& epsilon, int budget,
                                  PerturbationTrace* trace) {
  if (tracked.empty())
    throw std::invalid_argument("perturbation_search: nothing to track");
  if (epsilon < 0 || budget < 0)
    throw std::invalid_argument("perturbation_search: bad epsilon or budget");
  StableCoefficients coeffs(f, k);  // validates stable form
  const int d = f.degree();
  if (l > k - d - 1)
    throw std::invalid_argument("perturbation_search: need l <= k - deg(f) - 1");

  int span = 0;
  for (const auto& beta : tracked) {
    if (beta.empty() || !is_syndetic(beta, l))
      throw std::invalid_argument("perturbation_search: tracked selections must be "
                                  "non-empty and l-syndetic");
    span = std::max(span, beta.max());
  }

  const int window = 3 * k;
  const int spacing = window;  // clean-window separation; see AlignmentState
  const int schedule = std::max(64, std::min(budget, 4096));
  BlockSequence initial = generate_generic_blocks(k, l, window, schedule, span + l + 1);
  std::vector<IndexSet> blocks = initial.blocks();
  std::vector<TorusPoint> values;

  auto union_of = [&](const IndexSet& beta) {
    IndexSet u;
    for (int i : beta.elements())
      u = u.disjoint_union(blocks[static_cast<std::size_t>(i - 1)]);
    return u;
  };
  for (const auto& beta : tracked) values.push_back(coeffs.evaluate(union_of(beta)));

  // Window schedules per alignment, located through the pattern machinery:
  // the in-zone slot contents are shift-invariant, so one occurrence scan per
  // alignment yields the whole schedule.
  const int n_alignments = static_cast<int>(blocks.size()) - l;
  std::vector<AlignmentState> alignments;
  for (int j0 = 1; j0 <= n_alignments; ++j0) {
    int zone_lo = 0, zone_hi = 0;
    for (int j = j0; j <= j0 + l; ++j) {
      const IndexSet& blk = blocks[static_cast<std::size_t>(j - 1)];
      zone_lo = std::max(zone_lo, blk.min());
      zone_hi = (j == j0) ? blk.max() : std::min(zone_hi, blk.max());
    }
    std::vector<IndexSet> slots(static_cast<std::size_t>(l + 1));
    int probe = ((zone_lo + k - 1) / k) * k;
    for (int j = j0; j <= j0 + l; ++j) {
      const IndexSet& blk = blocks[static_cast<std::size_t>(j - 1)];
      slots[static_cast<std::size_t>(j - j0)] =
          blk.slice(probe + 1, probe + window).shifted(-probe);
    }
    Pattern interior(window, k, std::move(slots));
    AlignmentState a;
    a.j0 = j0;
    for (int n : pattern_occurrences(BlockSequence(blocks), interior, j0 - 1))
      if (n + 1 >= zone_lo && n + window <= zone_hi) a.positions.push_back(n);
    alignments.push_back(std::move(a));
  }

  // Move types: each pairs a tracked-compatible kappa with a gamma of free
  // middle positions and an assignment of its elements to kappa's blocks. The
  // per-application delta is computed once at the alignment's first clean
  // window and reused (identical at every clean window).
  auto kappas = kappa_candidates(span, l);
  std::vector<MoveType> types;
  std::uint64_t candidates_evaluated = 0;
  for (std::size_t ki = 0; ki < kappas.size(); ++ki) {
    const IndexSet& kappa = kappas[ki];
    const int j0 = kappa.min();
    const AlignmentState& align = alignments[static_cast<std::size_t>(j0 - 1)];
    if (align.positions.empty()) continue;
    const int n = align.positions.front();
    std::vector<int> free_mid;
    for (int x = n + k + 1; x <= n + 2 * k; ++x) {
      bool used = false;
      for (const auto& blk : blocks)
        if (blk.contains(x)) {
          used = true;
          break;
        }
      if (!used) free_mid.push_back(x - n);  // store window-relative offsets
    }
    const int t = static_cast<int>(free_mid.size());
    for (std::uint32_t mask = 1; mask < (1u << t); ++mask) {
      const int sz = __builtin_popcount(mask);
      if (sz > d || sz < kappa.size()) continue;
      std::vector<int> gamma;
      for (int b = 0; b < t; ++b)
        if (mask & (1u << b)) gamma.push_back(free_mid[static_cast<std::size_t>(b)]);
      for (const auto& assign : surjections(sz, kappa.elements())) {
        MoveType mt;
        mt.kappa_index = static_cast<int>(ki);
        mt.alignment = j0;
        mt.offsets = gamma;
        mt.blocks = assign;
        for (std::size_t ti = 0; ti < tracked.size(); ++ti) {
          std::vector<int> gained;
          for (std::size_t gi = 0; gi < gamma.size(); ++gi)
            if (tracked[ti].contains(assign[gi])) gained.push_back(n + gamma[gi]);
          if (gained.empty()) {
            mt.delta.push_back(TorusPoint::zero(f.dim()));
          } else {
            mt.delta.push_back(
                coeffs.insertion_delta(union_of(tracked[ti]), IndexSet(gained)));
          }
          ++candidates_evaluated;
        }
        types.push_back(std::move(mt));
      }
    }
  }

  SearchOutcome out;
  int moves = 0;
  Rat cur_max = max_norm(values);
  Rat cur_sum = sum_norm(values);

  struct Plan {
    std::vector<std::pair<int, int>> steps;  // (type index, repetitions)
    Rat max{-1};
    Rat sum{0};
    std::vector<TorusPoint> result;
  };

  auto windows_left = [&](int type_index) {
    const MoveType& mt = types[static_cast<std::size_t>(type_index)];
    return alignments[static_cast<std::size_t>(mt.alignment - 1)].available(spacing);
  };

  auto apply_plan = [&](const Plan& plan) {
    for (const auto& [type_index, reps] : plan.steps) {
      const MoveType& mt = types[static_cast<std::size_t>(type_index)];
      AlignmentState& align = alignments[static_cast<std::size_t>(mt.alignment - 1)];
      for (int c = 0; c < reps; ++c) {
        const int n = align.positions[align.next];
        PerturbationMove applied;
        applied.alignment = mt.alignment;
        applied.position = n;
        std::vector<int> abs_elems;
        for (std::size_t gi = 0; gi < mt.offsets.size(); ++gi) {
          int x = n + mt.offsets[gi];
          abs_elems.push_back(x);
          IndexSet& blk = blocks[static_cast<std::size_t>(mt.blocks[gi] - 1)];
          blk = blk.disjoint_union(IndexSet{x});
          auto [it, fresh] = applied.assignment.emplace(mt.blocks[gi], IndexSet{x});
          if (!fresh) it->second = it->second.disjoint_union(IndexSet{x});
        }
        applied.inserted = IndexSet(abs_elems);
        applied.effect = mt.delta;
        if (trace) trace->applied.push_back(std::move(applied));
        ++moves;
        // advance past every window the insertion can influence
        while (align.next < align.positions.size() &&
               align.positions[align.next] < n + spacing)
          ++align.next;
      }
    }
    values = plan.result;
    cur_max = plan.max;
    cur_sum = plan.sum;
  };

  auto better = [](const Rat& m, const Rat& s, const Plan& than) {
    return than.max < 0 || m < than.max || (m == than.max && s < than.sum);
  };

  while (cur_max > epsilon && moves < budget) {
    // greedy with a repetition line-search per move type; ties on the max
    // break by the total residual, so plateaus can be crossed
    Plan best;
    for (std::size_t mi = 0; mi < types.size(); ++mi) {
      const MoveType& mt = types[mi];
      int reps_cap = std::min({windows_left(static_cast<int>(mi)), budget - moves, 256});
      if (reps_cap < 1) continue;
      std::vector<TorusPoint> accum(values);
      for (int c = 1; c <= reps_cap; ++c) {
        for (std::size_t ti = 0; ti < accum.size(); ++ti)
          accum[ti] = accum[ti] + mt.delta[ti];
        ++candidates_evaluated;
        Rat m = max_norm(accum);
        Rat s = sum_norm(accum);
        if (better(m, s, best)) best = Plan{{{static_cast<int>(mi), c}}, m, s, accum};
      }
    }

    bool improves =
        best.max >= 0 && (best.max < cur_max || (best.max == cur_max && best.sum < cur_sum));

    if (!improves) {
      // stalled: search two-direction combinations, still ranked by the same
      // greedy objective
      const int pair_cap = 24;
      for (std::size_t m1 = 0; m1 < types.size() && !improves; ++m1) {
        int cap1 = std::min({windows_left(static_cast<int>(m1)), budget - moves, pair_cap});
        if (cap1 < 1) continue;
        std::vector<TorusPoint> acc1(values);
        for (int c1 = 1; c1 <= cap1; ++c1) {
          for (std::size_t ti = 0; ti < acc1.size(); ++ti)
            acc1[ti] = acc1[ti] + types[m1].delta[ti];
          for (std::size_t m2 = m1 + 1; m2 < types.size(); ++m2) {
            // both types may share an alignment; bound the joint consumption
            int cap2 = std::min({windows_left(static_cast<int>(m2)) -
                                     (types[m2].alignment == types[m1].alignment ? c1 : 0),
                                 budget - moves - c1, pair_cap});
            if (cap2 < 1) continue;
            std::vector<TorusPoint> acc2(acc1);
            for (int c2 = 1; c2 <= cap2; ++c2) {
              for (std::size_t ti = 0; ti < acc2.size(); ++ti)
                acc2[ti] = acc2[ti] + types[m2].delta[ti];
              ++candidates_evaluated;
              Rat m = max_norm(acc2);
              Rat s = sum_norm(acc2);
              if (better(m, s, best))
                best = Plan{{{static_cast<int>(m1), c1}, {static_cast<int>(m2), c2}},
                            m,
                            s,
                            acc2};
            }
          }
        }
      }
      improves = best.max >= 0 &&
                 (best.max < cur_max || (best.max == cur_max && best.sum < cur_sum));
    }

    if (!improves) break;
    apply_plan(best);
  }

  // Independent recomputation: the incrementally maintained values must agree
  // with a from-scratch evaluation of the final sequence.
  for (std::size_t ti = 0; ti < tracked.size(); ++ti)
    if (!(coeffs.evaluate(union_of(tracked[ti])) == values[ti]))
      throw std::logic_error("perturbation_search: incremental values diverged");

  BlockSequence final_blocks{blocks};
  if (!is_well_formed(final_blocks, k, l))
    throw std::logic_error("perturbation_search: moves broke well-formedness");

  if (trace) trace->candidates_evaluated = candidates_evaluated;
  out.value = cur_max;
  out.best_value = cur_max;
  out.sets_examined = candidates_evaluated;
  out.canonical_rank = 0;
  out.exhaustive = false;
  if (cur_max <= epsilon) out.block_witness = final_blocks;
  return out;
}

}  // namespace nilbohr
