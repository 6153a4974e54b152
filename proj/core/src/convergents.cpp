#include "nilbohr/convergents.hpp"

#include <stdexcept>

namespace nilbohr {

std::vector<Rat> convergents(const std::vector<BigInt>& pq) {
  if (pq.empty()) throw std::invalid_argument("convergents: empty continued fraction");
  for (std::size_t i = 1; i < pq.size(); ++i)
    if (pq[i] < 1) throw std::invalid_argument("convergents: partial quotients must be >= 1");
  std::vector<Rat> out;
  BigInt p_prev = 1, p_prev2 = 0;  // p_{-1} = 1, p_{-2} = 0
  BigInt q_prev = 0, q_prev2 = 1;
  for (const BigInt& a : pq) {
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    out.emplace_back(p, q);
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
  }
  return out;
}

std::vector<BigInt> standard_continued_fraction(const std::string& name, int terms) {
  if (terms < 1) throw std::invalid_argument("standard_continued_fraction: terms >= 1");
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(terms));
  if (name == "sqrt2") {  // [1; 2, 2, 2, ...]
    out.push_back(1);
    while (static_cast<int>(out.size()) < terms) out.push_back(2);
  } else if (name == "sqrt3") {  // [1; 1, 2, 1, 2, ...]
    out.push_back(1);
    while (static_cast<int>(out.size()) < terms) out.push_back(out.size() % 2 == 1 ? 1 : 2);
  } else if (name == "sqrt5") {  // [2; 4, 4, 4, ...]
    out.push_back(2);
    while (static_cast<int>(out.size()) < terms) out.push_back(4);
  } else if (name == "golden") {  // [1; 1, 1, 1, ...]
    while (static_cast<int>(out.size()) < terms) out.push_back(1);
  } else if (name == "e") {  // [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]
    out.push_back(2);
    int k = 1;
    while (static_cast<int>(out.size()) < terms) {
      std::size_t pos = out.size();  // 1-based pattern position
      if (pos % 3 == 2) {
        out.push_back(2 * k);
        ++k;
      } else {
        out.push_back(1);
      }
    }
  } else if (name == "pi") {
    static const int head[] = {3,  7,  15, 1, 292, 1, 1,  1, 2,  1, 3, 1,
                               14, 2,  1,  1, 2,   2, 2,  2, 1,  84, 2, 1,
                               1,  15, 3,  13, 1,  4, 2,  6, 6,  99, 1, 2};
    const int avail = static_cast<int>(sizeof(head) / sizeof(head[0]));
    if (terms > avail)
      throw std::invalid_argument("standard_continued_fraction: pi table exhausted");
    for (int i = 0; i < terms; ++i) out.push_back(head[i]);
  } else {
    throw std::invalid_argument("standard_continued_fraction: unknown constant " + name);
  }
  return out;
}

Rat convergent_approx(const std::string& name, const BigInt& max_den) {
  if (max_den < 1) throw std::invalid_argument("convergent_approx: max_den >= 1");
  int terms = 4;
  Rat best;
  bool have = false;
  while (terms <= 64) {
    std::vector<BigInt> cf;
    try {
      cf = standard_continued_fraction(name, terms);
    } catch (const std::invalid_argument&) {
      if (!have) throw;
      break;  // table exhausted; keep the best seen
    }
    auto cs = convergents(cf);
    bool grew = false;
    for (const auto& c : cs) {
      if (rat_den(c) <= max_den) {
        best = c;
        have = true;
      } else {
        grew = true;
      }
    }
    if (grew) break;  // denominators already exceed the cap
    terms *= 2;
  }
  if (!have) throw std::invalid_argument("convergent_approx: no convergent under cap");
  return best;
}

}  // namespace nilbohr
