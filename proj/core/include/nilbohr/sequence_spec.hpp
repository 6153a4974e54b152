#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nilbohr {

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// distributions so that streams are identical on every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [lo, hi] (modulo bias is irrelevant here).
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::uint64_t state_;
};

/// Expands a sequence expression to `length` positive integers. Forms:
///   "const:c"        n_i = c
///   "id"             n_i = i
///   "pow:b"          n_i = b^i
///   "list:[a,b,...]" explicit values (must cover the length)
///   "random:seed,max" reproducible values in [1, max]
/// Throws std::invalid_argument on unknown forms or bad parameters.
std::vector<long long> sequence_spec(const std::string& expr, int length);

}  // namespace nilbohr
