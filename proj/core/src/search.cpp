#include "nilbohr/search.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

namespace nilbohr {

namespace {

BigInt subset_sum(const std::vector<long long>& n, const IndexSet& alpha) {
  BigInt s = 0;
  for (int i : alpha.elements()) s += n[static_cast<std::size_t>(i - 1)];
  return s;
}

void require_sequence(const std::vector<long long>& n, int depth) {
  if (depth < 1) throw std::invalid_argument("search: depth must be >= 1");
  if (static_cast<int>(n.size()) < depth)
    throw std::invalid_argument("search: sequence shorter than the requested depth");
  for (long long v : n)
    if (v < 1) throw std::invalid_argument("search: sequence entries must be positive");
}

// Shared scan skeleton. With one worker the scan stops at the first hit;
// with several, each worker evaluates a rank-interleaved shard in full and
// the merge reproduces the single-worker outcome exactly (witness = minimum
// canonical rank, examined count and prefix minimum taken at that rank).
template <typename ValueFn>
SearchOutcome scan_syndetic(int depth, int k, const Rat& epsilon, int workers,
                            ValueFn&& value_of) {
  auto candidates = enumerate_syndetic(depth, k);
  SearchOutcome out;

  if (workers <= 1) {
    Rat best(-1);
    for (std::uint64_t rank = 0; rank < candidates.size(); ++rank) {
      Rat v = value_of(candidates[rank]);
      if (best < 0 || v < best) best = v;
      if (v <= epsilon) {
        out.witness = candidates[rank];
        out.value = v;
        out.best_value = best;
        out.canonical_rank = rank;
        out.sets_examined = rank + 1;
        return out;
      }
    }
    out.best_value = best < 0 ? Rat(0) : best;
    out.sets_examined = candidates.size();
    out.exhaustive = true;
    return out;
  }

  std::vector<Rat> values(candidates.size());
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::uint64_t rank = static_cast<std::uint64_t>(w); rank < candidates.size();
           rank += static_cast<std::uint64_t>(workers))
        values[rank] = value_of(candidates[rank]);
    });
  }
  for (auto& t : pool) t.join();

  Rat best(-1);
  for (std::uint64_t rank = 0; rank < candidates.size(); ++rank) {
    if (best < 0 || values[rank] < best) best = values[rank];
    if (values[rank] <= epsilon) {
      out.witness = candidates[rank];
      out.value = values[rank];
      out.best_value = best;
      out.canonical_rank = rank;
      out.sets_examined = rank + 1;
      return out;
    }
  }
  out.best_value = best < 0 ? Rat(0) : best;
  out.sets_examined = candidates.size();
  out.exhaustive = true;
  return out;
}

}  // namespace

std::vector<long long> sg_enumerate(const std::vector<long long>& n, int k,
                                    long long bound) {
  if (k < 0) throw std::invalid_argument("sg_enumerate: k must be >= 0");
  if (bound < 1) return {};
  for (long long v : n)
    if (v < 1) throw std::invalid_argument("sg_enumerate: entries must be positive");

  std::set<long long> sums;
  const int len = static_cast<int>(n.size());
  // DFS over chains with consecutive index gaps <= k, pruning on the running
  // sum (entries are positive, so sums only grow).
  for (int start = 1; start <= len; ++start) {
    long long s0 = n[static_cast<std::size_t>(start - 1)];
    if (s0 > bound) continue;
    sums.insert(s0);
    std::vector<std::pair<int, long long>> todo = {{start, s0}};
    while (!todo.empty()) {
      auto [last, sum] = todo.back();
      todo.pop_back();
      for (int next = last + 1; next <= std::min(len, k > 0 ? last + k : last); ++next) {
        long long s = sum + n[static_cast<std::size_t>(next - 1)];
        if (s > bound) continue;
        sums.insert(s);
        todo.push_back({next, s});
      }
    }
  }
  return {sums.begin(), sums.end()};
}

SearchOutcome search_polynomial_recurrence(const RationalPolynomial& p,
                                           const std::vector<long long>& n, int k,
                                           const Rat& epsilon, int depth, int workers) {
  require_sequence(n, depth);
  if (k < 1) throw std::invalid_argument("search: k must be >= 1");
  if (epsilon < 0) throw std::invalid_argument("search: epsilon must be >= 0");
  SearchOutcome out = scan_syndetic(depth, k, epsilon, workers, [&](const IndexSet& a) {
    return torus_coord_dist(p(subset_sum(n, a)));
  });
  out.exploratory = k < p.degree();
  return out;
}

SearchOutcome search_orbit_recurrence(const Unitriangular& g,
                                      const std::vector<long long>& n, int k,
                                      const Rat& epsilon, int depth, int workers) {
  require_sequence(n, depth);
  if (k < 1) throw std::invalid_argument("search: k must be >= 1");
  if (epsilon < 0) throw std::invalid_argument("search: epsilon must be >= 0");
  SearchOutcome out = scan_syndetic(depth, k, epsilon, workers, [&](const IndexSet& a) {
    long long e = static_cast<long long>(subset_sum(n, a));
    return dist_to_identity(power(g, e));
  });
  const int size = g.size();
  out.exploratory = k < size * (size - 1) / 2;
  return out;
}

SearchOutcome search_orbit_staged(const Unitriangular& g, const std::vector<long long>& n,
                                  int k, const Rat& epsilon, int depth, int pool_size) {
  require_sequence(n, depth);
  if (k < 1) throw std::invalid_argument("search: k must be >= 1");
  if (pool_size < 1) throw std::invalid_argument("search: pool_size must be >= 1");

  auto candidates = enumerate_syndetic(depth, k);
  SearchOutcome out;
  const int size = g.size();
  out.exploratory = k < size * (size - 1) / 2;

  // Stage 1: the abelianised orbit never exceeds the full quotient metric, so
  // candidates failing it cannot be witnesses.
  std::vector<std::uint64_t> pool;
  std::uint64_t scanned = 0;
  for (std::uint64_t rank = 0; rank < candidates.size(); ++rank) {
    ++scanned;
    long long e = static_cast<long long>(subset_sum(n, candidates[rank]));
    if (project_abelian(power(g, e)).norm() <= epsilon) {
      pool.push_back(rank);
      if (static_cast<int>(pool.size()) >= pool_size) break;
    }
  }

  auto full_value = [&](const IndexSet& a) {
    long long e = static_cast<long long>(subset_sum(n, a));
    return dist_to_identity(power(g, e));
  };

  (void)scanned;  // the cheap pre-scan is not charged to sets_examined
  std::uint64_t full_evals = 0;
  Rat best(-1);
  auto finish = [&](const IndexSet& witness, const Rat& v, std::uint64_t rank) {
    out.witness = witness;
    out.value = v;
    out.best_value = (best < 0 || v < best) ? v : best;
    out.canonical_rank = rank;
    out.sets_examined = full_evals;
    return out;
  };

  // Stage 2a: pool members in canonical order.
  for (std::uint64_t rank : pool) {
    Rat v = full_value(candidates[rank]);
    ++full_evals;
    if (best < 0 || v < best) best = v;
    if (v <= epsilon) return finish(candidates[rank], v, rank);
  }
  // Stage 2b: syndetic unions of disjoint pool pairs (finite-sums refinement).
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const IndexSet& a = candidates[pool[i]];
      const IndexSet& b = candidates[pool[j]];
      if (!a.disjoint_with(b)) continue;
      IndexSet u = a.set_union(b);
      if (!is_syndetic(u, k)) continue;
      Rat v = full_value(u);
      ++full_evals;
      if (best < 0 || v < best) best = v;
      if (v <= epsilon) {
        auto it = std::lower_bound(candidates.begin(), candidates.end(), u, canonical_less);
        std::uint64_t rank = static_cast<std::uint64_t>(it - candidates.begin());
        return finish(u, v, rank);
      }
    }
  }
  out.best_value = best < 0 ? Rat(0) : best;
  out.sets_examined = full_evals;
  out.exhaustive = false;  // heuristic: absence proves nothing
  return out;
}

SharpnessReport verify_sharpness(int k, int d, int l, const BlockSequence& b) {
  if (d < 1 || d > k) throw std::invalid_argument("verify_sharpness: need 1 <= d <= k");
  if (l < 0) throw std::invalid_argument("verify_sharpness: l must be >= 0");
  if (b.length() < 1) throw std::invalid_argument("verify_sharpness: empty sequence");
  if (!maps_syndetic(b, l, k))
    throw std::domain_error("verify_sharpness: blocks do not map S_l into S_k");

  StableCoefficients f = alternating_half_coeffs(k, d);
  SharpnessReport report;
  report.in_sharpness_regime = l >= k - d + 2;

  const int first = std::max(l, 1);
  for (int i = 1; i <= b.length(); ++i) {
    Rat v = f.evaluate(b.block(i))[0];
    report.block_values.push_back(v);
    if (i >= first && v != Rat(1, 2)) report.all_half_from_l = false;
  }

  // Covering property: every gamma inside a single late block with diameter
  // <= k automatically has size <= d. Checked exhaustively per block via the
  // k-window below each element.
  for (int i = first; i <= b.length() && report.covering_ok; ++i) {
    const auto& elems = b.block(i).elements();
    for (std::size_t t = 0; t < elems.size(); ++t) {
      int count = 1;
      for (std::size_t u = t + 1; u < elems.size() && elems[u] <= elems[t] + k; ++u)
        ++count;
      if (count > d) {
        report.covering_ok = false;
        break;
      }
    }
  }

  Rat minv(-1), maxv(-1);
  for (const auto& beta : enumerate_syndetic(b.length(), l)) {
    Rat norm = f.evaluate(blocks_union(b, beta)).norm();
    ++report.betas_checked;
    if (minv < 0 || norm < minv) {
      minv = norm;
      report.argmin_beta = beta;
    }
    if (maxv < 0 || norm > maxv) maxv = norm;
  }
  report.min_norm = minv < 0 ? Rat(0) : minv;
  report.max_norm = maxv < 0 ? Rat(0) : maxv;
  return report;
}

DivisibleBlocksResult find_divisible_blocks(const std::vector<long long>& n, int k,
                                            long long m, int target_length) {
  if (k < 1 || m < 1 || target_length < 1)
    throw std::invalid_argument("find_divisible_blocks: bad parameters");
  for (long long v : n)
    if (v < 1) throw std::invalid_argument("find_divisible_blocks: entries must be positive");

  DivisibleBlocksResult result;
  const int len = static_cast<int>(n.size());

  // Residue stream r holds indices r, r+k, r+2k, ...; cut each stream where
  // its prefix sums (mod m) revisit their most frequent residue.
  std::vector<std::vector<std::vector<int>>> chunks(static_cast<std::size_t>(k));
  result.residue_stats.assign(static_cast<std::size_t>(k), {});
  for (int r = 1; r <= k; ++r) {
    std::vector<long long> prefix = {0};
    std::vector<int> positions;  // stream positions, aligned with prefix[1..]
    for (int pos = r; pos <= len; pos += k) {
      prefix.push_back((prefix.back() + n[static_cast<std::size_t>(pos - 1)]) % m);
      positions.push_back(pos);
    }
    auto& stats = result.residue_stats[static_cast<std::size_t>(r - 1)];
    for (long long residue : prefix) ++stats[residue];
    long long pivot = 0;
    int best = -1;
    for (const auto& [residue, count] : stats)
      if (count > best) {
        best = count;
        pivot = residue;
      }
    // chunks between consecutive pivot hits have sum divisible by m
    int last_cut = -1;  // prefix index of the previous pivot hit
    for (int t = 0; t < static_cast<int>(prefix.size()); ++t) {
      if (prefix[static_cast<std::size_t>(t)] != pivot) continue;
      if (last_cut >= 0 && t > last_cut) {
        std::vector<int> chunk(positions.begin() + last_cut, positions.begin() + t);
        chunks[static_cast<std::size_t>(r - 1)].push_back(std::move(chunk));
      }
      last_cut = t;
    }
  }

  std::vector<IndexSet> blocks;
  std::vector<std::size_t> cursor(static_cast<std::size_t>(k), 0);
  for (int j = 0; j < target_length; ++j) {
    const std::size_t r = static_cast<std::size_t>(j % k);
    if (cursor[r] >= chunks[r].size()) {
      result.note = "residue stream " + std::to_string(r + 1) +
                    " ran out of zero-sum chunks; truncation too short";
      return result;
    }
    blocks.emplace_back(chunks[r][cursor[r]++]);
  }

  BlockSequence candidate(std::move(blocks));
  for (int i = 1; i <= candidate.length(); ++i) {
    BigInt s = subset_sum(n, candidate.block(i));
    if (s % m != 0) {
      result.note = "internal: block sum not divisible by m";
      return result;
    }
  }
  if (!maps_syndetic(candidate, k, k)) {
    result.note = "greedy chunks exist but do not chain into an S_k morphism";
    return result;
  }
  result.blocks = std::move(candidate);
  return result;
}

}  // namespace nilbohr
