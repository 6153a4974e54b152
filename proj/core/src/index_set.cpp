#include "nilbohr/index_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilbohr {

IndexSet::IndexSet(std::vector<int> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (elems_[i] < 1) throw std::invalid_argument("IndexSet: elements must be >= 1");
    if (i > 0 && elems_[i] == elems_[i - 1])
      throw std::invalid_argument("IndexSet: duplicate element");
  }
}

int IndexSet::min() const {
  if (empty()) throw std::domain_error("IndexSet::min on empty set");
  return elems_.front();
}

int IndexSet::max() const {
  if (empty()) throw std::domain_error("IndexSet::max on empty set");
  return elems_.back();
}

bool IndexSet::contains(int x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(),
                       elems_.end());
}

bool IndexSet::disjoint_with(const IndexSet& other) const {
  auto i = elems_.begin();
  auto j = other.elems_.begin();
  while (i != elems_.end() && j != other.elems_.end()) {
    if (*i == *j) return false;
    (*i < *j) ? ++i : ++j;
  }
  return true;
}

IndexSet IndexSet::disjoint_union(const IndexSet& other) const {
  if (!disjoint_with(other))
    throw std::invalid_argument("disjoint_union: operands intersect");
  return set_union(other);
}

IndexSet IndexSet::set_union(const IndexSet& other) const {
  IndexSet out;
  out.elems_.reserve(elems_.size() + other.elems_.size());
  std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                 std::back_inserter(out.elems_));
  out.elems_.erase(std::unique(out.elems_.begin(), out.elems_.end()), out.elems_.end());
  return out;
}

IndexSet IndexSet::shifted(int delta) const {
  IndexSet out;
  out.elems_.reserve(elems_.size());
  for (int x : elems_) {
    if (x + delta < 1) throw std::invalid_argument("shifted: element would drop below 1");
    out.elems_.push_back(x + delta);
  }
  return out;
}

IndexSet IndexSet::slice(int lo, int hi) const {
  IndexSet out;
  for (int x : elems_)
    if (x >= lo && x <= hi) out.elems_.push_back(x);
  return out;
}

std::vector<int> gaps(const IndexSet& a) {
  if (a.empty()) throw std::domain_error("gaps: empty set");
  const auto& e = a.elements();
  std::vector<int> out;
  out.reserve(e.size() - 1);
  for (std::size_t i = 1; i < e.size(); ++i) out.push_back(e[i] - e[i - 1]);
  return out;
}

bool is_syndetic(const IndexSet& a, int k) {
  if (k < 0) throw std::invalid_argument("is_syndetic: k must be >= 0");
  const auto& e = a.elements();
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i] - e[i - 1] > k) return false;
  return true;
}

int diameter(const IndexSet& a) {
  if (a.empty()) throw std::domain_error("diameter: empty set");
  return a.max() - a.min();
}

bool canonical_less(const IndexSet& a, const IndexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.elements() < b.elements();
}

namespace {

// Chains with gaps <= k, extended rightward from a fixed first element. The
// visitor sees sets grouped by cardinality layer; collecting and sorting once
// is simpler and cheap at the scales this library targets.
void collect_chains(int n, int k, std::vector<IndexSet>& out) {
  std::vector<int> chain;
  // Iterative DFS over (set, last element): extend by last+1 .. last+k.
  struct Frame {
    int next;
    int limit;
  };
  for (int start = 1; start <= n; ++start) {
    chain = {start};
    out.emplace_back(chain);
    std::vector<Frame> stack;
    stack.push_back({start + 1, std::min(n, k > 0 ? start + k : start)});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next > top.limit) {
        stack.pop_back();
        chain.pop_back();
        if (chain.empty()) break;
        continue;
      }
      int x = top.next++;
      chain.push_back(x);
      out.emplace_back(chain);
      stack.push_back({x + 1, std::min(n, k > 0 ? x + k : x)});
    }
    chain.clear();
  }
}

}  // namespace

std::vector<IndexSet> enumerate_syndetic(int n, int k) {
  if (n < 1) throw std::invalid_argument("enumerate_syndetic: n must be >= 1");
  if (k < 0) throw std::invalid_argument("enumerate_syndetic: k must be >= 0");
  std::vector<IndexSet> out;
  collect_chains(n, k, out);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

void for_each_syndetic(int n, int k,
                       const std::function<bool(std::uint64_t, const IndexSet&)>& visit) {
  auto all = enumerate_syndetic(n, k);
  for (std::uint64_t rank = 0; rank < all.size(); ++rank)
    if (!visit(rank, all[rank])) return;
}

std::uint64_t count_syndetic(int n, int k) {
  // sets with max m are chains ending at m: c(m) = 1 + sum_{m-k <= j < m} c(j)
  std::vector<std::uint64_t> c(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t total = 0;
  for (int m = 1; m <= n; ++m) {
    std::uint64_t v = 1;
    for (int j = std::max(1, m - k); j < m; ++j) v += c[j];
    c[m] = v;
    total += v;
  }
  return total;
}

}  // namespace nilbohr
