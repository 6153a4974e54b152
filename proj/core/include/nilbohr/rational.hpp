#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace nilbohr {

// All arithmetic in this library is exact. Rationals are arbitrary-precision;
// anything irrational enters only as a caller-supplied rational approximant
// (see convergents.hpp).
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

/// Largest integer <= q.
inline BigInt rat_floor(const Rat& q) {
  BigInt n = rat_num(q);
  BigInt d = rat_den(q);
  BigInt t = n / d;  // truncates toward zero
  if (n < 0 && t * d != n) --t;
  return t;
}

/// Representative of q in [0,1).
inline Rat mod_one(const Rat& q) { return q - Rat(rat_floor(q)); }

/// Distance from q to the nearest integer, in [0, 1/2].
inline Rat torus_coord_dist(const Rat& q) {
  Rat f = mod_one(q);
  Rat c = 1 - f;
  return f <= c ? f : c;
}

/// Canonical "p/q" form, always with an explicit denominator.
inline std::string rat_str(const Rat& q) {
  return rat_num(q).str() + "/" + rat_den(q).str();
}

/// Parses "p/q" (or a bare integer "p"). Throws std::invalid_argument on
/// malformed text or a zero denominator.
inline Rat parse_rat(const std::string& text) {
  auto bad = [&](const char* why) {
    throw std::invalid_argument("bad rational '" + text + "': " + why);
  };
  if (text.empty()) bad("empty");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) bad("zero denominator");
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    bad("not an integer ratio");
  }
  return Rat();  // unreachable
}

}  // namespace nilbohr
