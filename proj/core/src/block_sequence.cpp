#include "nilbohr/block_sequence.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nilbohr {

BlockSequence::BlockSequence(std::vector<IndexSet> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].empty())
      throw std::invalid_argument("BlockSequence: blocks must be non-empty");
    for (std::size_t j = i + 1; j < blocks_.size(); ++j)
      if (!blocks_[i].disjoint_with(blocks_[j]))
        throw std::invalid_argument("BlockSequence: blocks must be pairwise disjoint");
  }
}

const IndexSet& BlockSequence::block(int i) const {
  if (i < 1 || i > length()) throw std::out_of_range("BlockSequence::block index");
  return blocks_[static_cast<std::size_t>(i - 1)];
}

int BlockSequence::max_element() const {
  int m = 0;
  for (const auto& b : blocks_) m = std::max(m, b.max());
  return m;
}

IndexSet blocks_union(const BlockSequence& b, const IndexSet& beta) {
  if (!beta.empty() && beta.max() > b.length())
    throw std::out_of_range("blocks_union: selection reaches beyond the truncation");
  IndexSet out;
  for (int i : beta.elements()) out = out.disjoint_union(b.block(i));
  return out;
}

bool maps_syndetic(const BlockSequence& b, int l, int k) {
  if (b.length() < 1) throw std::invalid_argument("maps_syndetic: empty sequence");
  for (const auto& beta : enumerate_syndetic(b.length(), l))
    if (!is_syndetic(blocks_union(b, beta), k)) return false;
  return true;
}

bool is_well_formed(const BlockSequence& b, int k, int l) {
  if (k < 1 || l < 0) throw std::invalid_argument("is_well_formed: need k >= 1, l >= 0");
  if (b.length() < 1) return false;
  for (const auto& blk : b.blocks())
    if ((blk.max() - blk.min()) % k != 0) return false;
  for (int i = 1; i + l + 1 <= b.length(); ++i)
    if (b.block(i + l + 1).min() <= b.block(i).max() + k) return false;
  return maps_syndetic(b, l, k);
}

const IndexSet Pattern::empty_slot_{};

Pattern::Pattern(int length, int k, std::vector<IndexSet> slots)
    : length_(length), k_(k), slots_(std::move(slots)) {
  if (length_ < 1 || k_ < 1) throw std::invalid_argument("Pattern: need length, k >= 1");
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const auto& s = slots_[i];
    if (!s.empty() && (s.min() < 1 || s.max() > length_))
      throw std::invalid_argument("Pattern: slot escapes the window");
    if (!is_syndetic(s, k_))
      throw std::invalid_argument("Pattern: non-empty slots must be k-syndetic");
    for (std::size_t j = i + 1; j < slots_.size(); ++j)
      if (!s.disjoint_with(slots_[j]))
        throw std::invalid_argument("Pattern: slots must be pairwise disjoint");
  }
}

const IndexSet& Pattern::slot(int i) const {
  if (i < 1 || i > slot_count()) return empty_slot_;
  return slots_[static_cast<std::size_t>(i - 1)];
}

std::vector<int> pattern_occurrences(const BlockSequence& b, const Pattern& p,
                                     int slot_offset) {
  std::vector<int> out;
  const int k = p.syndeticity();
  const int hi = b.max_element() + p.length();
  for (int n = 0; n <= hi; n += k) {
    bool match = true;
    for (int i = 1; i <= b.length() && match; ++i) {
      IndexSet window = b.block(i).slice(n + 1, n + p.length()).shifted(-n);
      if (window != p.slot(i - slot_offset)) match = false;
    }
    if (match) out.push_back(n);
  }
  return out;
}

BlockSequence canonical_blocks(int k, const std::vector<int>& anchors) {
  if (k < 1) throw std::invalid_argument("canonical_blocks: k must be >= 1");
  if (static_cast<int>(anchors.size()) < k + 1)
    throw std::invalid_argument("canonical_blocks: need at least k+1 anchors");
  for (std::size_t j = 0; j < anchors.size(); ++j) {
    if (anchors[j] < 1 || (anchors[j] - static_cast<int>(j + 1)) % k != 0)
      throw std::invalid_argument("canonical_blocks: anchor residues must follow the index");
    if (j > 0 && anchors[j] <= anchors[j - 1])
      throw std::invalid_argument("canonical_blocks: anchors must increase");
  }
  std::vector<IndexSet> blocks;
  for (std::size_t j = 0; j + k < anchors.size(); ++j) {
    std::vector<int> elems;
    for (int x = anchors[j]; x <= anchors[j + k] - k; x += k) elems.push_back(x);
    blocks.emplace_back(elems);
  }
  return BlockSequence(std::move(blocks));
}

std::vector<BlockSequence> canonical_block_family(int k, int block_count, int max_slack) {
  if (block_count < 1 || max_slack < 0)
    throw std::invalid_argument("canonical_block_family: bad parameters");
  const int n_anchors = block_count + k;
  std::vector<BlockSequence> family;
  std::vector<int> slack(static_cast<std::size_t>(n_anchors), 0);
  // Enumerate non-decreasing slack vectors in [0, max_slack].
  std::function<void(int, int)> rec = [&](int pos, int minv) {
    if (pos == n_anchors) {
      std::vector<int> anchors(slack.size());
      for (std::size_t j = 0; j < slack.size(); ++j)
        anchors[j] = static_cast<int>(j + 1) + k * slack[j];
      family.push_back(canonical_blocks(k, anchors));
      return;
    }
    for (int v = minv; v <= max_slack; ++v) {
      slack[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return family;
}

namespace {

// Window census key: the list of (block index, in-window content) pairs.
using WindowKey = std::vector<std::pair<int, std::vector<int>>>;

bool forced_bounded(const WindowKey& key, int window_len, int k) {
  for (const auto& [slot, elems] : key) {
    (void)slot;
    if (elems.empty()) continue;
    if (elems.back() + k <= window_len) return true;  // global max of the block pinned
    if (elems.front() - k >= 1) return true;          // global min pinned
  }
  return false;
}

}  // namespace

GenericityReport certify_generic(const BlockSequence& b, int k, int l, int m, int n) {
  (void)l;
  GenericityReport report;
  // Shorter windows are certified through their length-m extensions: any
  // occurrence of a shorter content sits inside the observed m-window at the
  // same aligned position, so the census at length m covers them.
  const int len = m;
  std::map<WindowKey, std::uint64_t> census;
  const int hi = b.max_element();
  for (int pos = 0; pos <= hi; pos += k) {
    WindowKey key;
    for (int i = 1; i <= b.length(); ++i) {
      IndexSet w = b.block(i).slice(pos + 1, pos + len).shifted(-pos);
      if (!w.empty()) key.emplace_back(i, w.elements());
    }
    if (key.empty()) continue;
    ++census[key];
  }
  for (const auto& [key, count] : census) {
    ++report.patterns_seen;
    if (forced_bounded(key, len, k)) {
      ++report.bounded_patterns;
      continue;
    }
    if (count < static_cast<std::uint64_t>(n)) {
      report.ok = false;
      std::ostringstream os;
      os << "window length " << len << ": unbounded-class content seen only " << count
         << " times (need " << n << ")";
      report.shortfalls.push_back(os.str());
    }
  }
  return report;
}

BlockSequence generate_generic_blocks(int k, int l, int m, int n, int block_count) {
  if (k < 1 || l < 0 || n < 1 || block_count < 1)
    throw std::invalid_argument("generate_generic_blocks: bad parameters");
  if (l >= k)
    throw std::invalid_argument("generate_generic_blocks: need l < k");
  if (m < k || m % k != 0)
    throw std::invalid_argument("generate_generic_blocks: m must be a positive multiple of k");

  // Block j is the step-k progression from s_j to s_{j+l+1} - 2k, where
  // s_j = j*stride + (j mod (l+1)). Any l+1 consecutive blocks interleave on
  // distinct residues; blocks l+1 apart are separated by more than k, which is
  // exactly condition (2). The stride is sized so interior windows recur.
  const int period = l + 1;
  const int stride = k * (n + 2 * (m / k) + 4);
  auto start_of = [&](int j) { return j * stride + (j % period) + 1; };

  std::vector<IndexSet> blocks;
  for (int j = 0; j < block_count; ++j) {
    const int lo = start_of(j);
    const int hi = start_of(j + period) - 2 * k;
    std::vector<int> elems;
    for (int x = lo; x <= hi; x += k) elems.push_back(x);
    blocks.emplace_back(elems);
  }
  BlockSequence result(std::move(blocks));

  if (!is_well_formed(result, k, l))
    throw std::logic_error("generate_generic_blocks: construction failed well-formedness");
  GenericityReport cert = certify_generic(result, k, l, m, n);
  if (!cert.ok) {
    std::string msg = "generate_generic_blocks: genericity certificate failed";
    for (const auto& s : cert.shortfalls) msg += "; " + s;
    throw std::logic_error(msg);
  }
  return result;
}

}  // namespace nilbohr
