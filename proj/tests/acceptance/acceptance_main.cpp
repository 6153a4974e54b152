// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Every tolerance is exact (rational equality) unless a criterion
// names an epsilon, and every bound is pinned in code right here.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "nilbohr/convergents.hpp"
#include "nilbohr/cube.hpp"
#include "nilbohr/search.hpp"
#include "nilbohr/sequence_spec.hpp"
#include "nilbohr/serialization.hpp"
#include "witness_check.hpp"

using namespace nilbohr;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (elapsed > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::ostringstream line;
  line << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << label << " ["
       << elapsed << "s / " << budget_seconds << "s]";
  if (!detail.empty()) line << " -- " << detail;
  std::cout << line.str() << "\n";
  if (!ok) ++failures;
}

Rat random_rat(SplitMix64& rng, long long max_den) {
  long long den = rng.range(1, max_den);
  return Rat(rng.range(0, den - 1), den);
}

TorusPoint random_point(SplitMix64& rng, int dim, long long max_den) {
  std::vector<Rat> coords;
  for (int i = 0; i < dim; ++i) coords.push_back(random_rat(rng, max_den));
  return TorusPoint(std::move(coords));
}

TorusPolynomial random_poly(SplitMix64& rng, int dim, int degree, int window,
                            long long max_den) {
  TorusPolynomial::CoeffMap coeffs;
  const std::uint32_t full = (1u << window) - 1;
  for (std::uint32_t mask = 0;; ++mask) {
    if (__builtin_popcount(mask) <= degree) {
      std::vector<int> elems;
      for (int i = 0; i < window; ++i)
        if (mask & (1u << i)) elems.push_back(i + 1);
      coeffs.emplace(IndexSet(elems), random_point(rng, dim, max_den));
    }
    if (mask == full) break;
  }
  return TorusPolynomial(dim, degree, std::move(coeffs));
}

std::vector<IndexSet> subsets_of(int n) {
  std::vector<IndexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> elems;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) elems.push_back(i + 1);
    out.emplace_back(elems);
  }
  return out;
}

// ---- criterion bodies -----------------------------------------------------

bool inclusion_exclusion_roundtrip(std::string& detail) {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    int window = 3 + static_cast<int>(rng.range(0, 3));
    int degree = static_cast<int>(rng.range(0, 3));
    int dim = 1 + static_cast<int>(rng.range(0, 1));
    TorusPolynomial f = random_poly(rng, dim, degree, window, 64);
    std::map<IndexSet, TorusPoint> values;
    for (const auto& a : subsets_of(window)) values.emplace(a, evaluate(f, a));
    if (!(coefficients_from_values(values, degree, dim) == f)) {
      detail = "roundtrip mismatch at trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

bool degree_vanishing(std::string& detail) {
  SplitMix64 rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 1 + static_cast<int>(rng.range(0, 2));
    std::vector<Rat> cs;
    for (int i = 0; i < d; ++i) cs.push_back(random_rat(rng, 64));
    if (cs.back() == 0) cs.back() = Rat(1, 5);
    RationalPolynomial p(cs);
    const int window = 5;
    std::vector<long long> n;
    for (int i = 0; i < window; ++i) n.push_back(rng.range(1, 50));
    // lift_integer_polynomial verifies the vanishing internally and throws on
    // violation; re-check the support here as the acceptance assertion.
    TorusPolynomial f = lift_integer_polynomial(p, n, window, d);
    for (const auto& [gamma, a] : f.coeffs()) {
      (void)a;
      if (gamma.size() > d) {
        detail = "coefficient beyond degree at trial " + std::to_string(trial);
        return false;
      }
    }
  }
  return true;
}

bool parallelepiped_sums(std::string& detail) {
  SplitMix64 rng(303);
  for (int degree = 1; degree <= 3; ++degree) {
    const int r = degree + 1;
    int done = 0;
    while (done < 100) {
      TorusPolynomial f = random_poly(rng, 1, degree, 8, 32);
      std::vector<std::vector<int>> groups(static_cast<std::size_t>(r) + 1);
      for (int x = 1; x <= 8; ++x)
        groups[static_cast<std::size_t>(rng.range(0, r))].push_back(x);
      bool feasible = true;
      for (int s = 1; s <= r; ++s)
        if (groups[static_cast<std::size_t>(s)].empty()) feasible = false;
      if (!feasible) continue;
      std::vector<IndexSet> sides;
      for (int s = 1; s <= r; ++s) sides.emplace_back(groups[static_cast<std::size_t>(s)]);
      SetParallelepiped p = make_parallelepiped(IndexSet(groups[0]), sides);
      TorusPoint acc = TorusPoint::zero(1);
      for (Vertex w = 0; w < (Vertex{1} << r); ++w) {
        TorusPoint v = evaluate(f, p.vertex(w));
        acc = (__builtin_popcount(w) % 2 == 0) ? acc + v : acc - v;
      }
      if (!acc.is_zero()) {
        detail = "non-zero alternating sum at degree " + std::to_string(degree);
        return false;
      }
      ++done;
    }
  }
  return true;
}

bool counterexample_exactness(std::string& detail) {
  auto family = canonical_block_family(3, 8, 2);
  if (family.size() < 20) {
    detail = "family too small";
    return false;
  }
  for (std::size_t i = 0; i < 20; ++i) {
    if (!is_well_formed(family[i], 3, 3)) {
      detail = "family member " + std::to_string(i) + " not well-formed";
      return false;
    }
    SharpnessReport r = verify_sharpness(3, 2, 3, family[i]);
    for (std::size_t b = 2; b < r.block_values.size(); ++b) {  // i >= l = 3, 1-based
      if (r.block_values[b] != Rat(1, 2)) {
        detail = "block value != 1/2 in member " + std::to_string(i);
        return false;
      }
    }
    if (!r.covering_ok) {
      detail = "covering property failed in member " + std::to_string(i);
      return false;
    }
  }
  return true;
}

bool theorem_a_desk_scale(std::string& detail) {
  SplitMix64 rng(505);
  const char* constants[] = {"sqrt2", "sqrt3", "sqrt5", "golden", "e", "pi"};
  const char* sequences[] = {"id", "pow:2", "random"};
  int found_first = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Rat c2 = convergent_approx(constants[rng.next() % 6], 1000);
    Rat c1 = (rng.next() % 2) ? convergent_approx(constants[rng.next() % 6], 200) : Rat(0);
    RationalPolynomial p({mod_one(c1), mod_one(c2)});  // quadratic, zero constant term
    std::string seq = sequences[rng.next() % 3];
    if (seq == "random") seq = "random:" + std::to_string(rng.next() % 1000) + ",100";

    auto run = [&](int depth) {
      auto n = sequence_spec(seq, depth);
      SearchOutcome o = search_polynomial_recurrence(p, n, 2, Rat(1, 20), depth);
      if (o.witness) {
        Rat again = check::poly_witness_value(p.coeffs(), n, o.witness->elements());
        if (again != o.value || again > Rat(1, 20) ||
            !check::valid_candidate(o.witness->elements(), 2, depth))
          throw std::logic_error("witness failed re-verification");
      }
      return o;
    };
    SearchOutcome o16 = run(16);
    if (o16.witness) {
      ++found_first;
    } else {
      SearchOutcome o20 = run(20);
      if (!o20.witness) {
        detail = "instance " + std::to_string(trial) + " failed even at depth 20";
        return false;
      }
    }
  }
  if (found_first < 48) {
    detail = "only " + std::to_string(found_first) + "/50 found at depth 16";
    return false;
  }
  detail = std::to_string(found_first) + "/50 at depth 16";
  return true;
}

bool theorem_b_heisenberg(std::string& detail) {
  // A truncation at depth 14 carries only ~105 orbit points, so a random
  // (a, b, c) is sometimes genuinely infeasible at epsilon = 1/10 (the
  // theorem promises witnesses eventually, not within a fixed depth).
  // Instances are screened by the closed-form orbit entries
  //   g^n = (n a, n b, n c + C(n,2) a b)
  // over the realisable exponents -- a route independent of the search -- and
  // every feasible instance must then be solved and re-verified.
  SplitMix64 rng(606);
  const char* constants[] = {"sqrt2", "sqrt3", "sqrt5", "golden", "e", "pi"};
  auto n = sequence_spec("id", 14);
  auto exponents = sg_enumerate(n, 3, 200);
  const Rat eps(1, 10);

  int done = 0, drawn = 0;
  while (done < 20 && drawn < 200) {
    ++drawn;
    Rat a = convergent_approx(constants[rng.next() % 6], 2500);
    Rat b = convergent_approx(constants[rng.next() % 6], 2500);
    Rat c = random_rat(rng, 12);
    std::vector<std::vector<Rat>> raw(3, std::vector<Rat>(3, Rat(0)));
    for (int i = 0; i < 3; ++i) raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    raw[0][1] = a;
    raw[1][2] = b;
    raw[0][2] = c;

    bool feasible = false;
    for (long long e : exponents) {
      // quick closed-form cut on the abelian part before the grid minimum
      if (torus_coord_dist(Rat(e) * a) > eps || torus_coord_dist(Rat(e) * b) > eps)
        continue;
      if (check::orbit_witness_value(raw, e) <= eps) {
        feasible = true;
        break;
      }
    }
    if (!feasible) continue;

    Unitriangular g = Unitriangular::heisenberg(a, b, c);
    SearchOutcome o = search_orbit_recurrence(g, n, 3, eps, 14);
    if (!o.witness) {
      detail = "feasible instance " + std::to_string(drawn) + " found no witness";
      return false;
    }
    long long e = 0;
    for (int i : o.witness->elements()) e += n[static_cast<std::size_t>(i - 1)];
    Rat again = check::orbit_witness_value(raw, e);
    if (again != o.value || again > eps) {
      detail = "independent value disagreed on instance " + std::to_string(drawn);
      return false;
    }
    ++done;
  }
  if (done < 20) {
    detail = "only " + std::to_string(done) + " feasible instances in 200 draws";
    return false;
  }
  detail = "20/20 solved and verified (" + std::to_string(drawn) + " draws screened)";
  return true;
}

bool sharpness_regime(std::string& detail) {
  // documented finite family: all canonical sequences with 5 blocks and
  // anchor slack bounded by 2
  auto family = canonical_block_family(3, 5, 2);
  for (std::size_t i = 0; i < family.size(); ++i) {
    SharpnessReport r = verify_sharpness(3, 2, 3, family[i]);
    if (!r.in_sharpness_regime) {
      detail = "regime flag wrong";
      return false;
    }
    // every singleton from index l on evaluates to exactly 1/2, never below
    for (std::size_t b = 2; b < r.block_values.size(); ++b)
      if (r.block_values[b] != Rat(1, 2)) {
        detail = "singleton below 1/2 in member " + std::to_string(i);
        return false;
      }
    // and no selection exceeds it: the sup over S_3 selections is 1/2 exactly
    if (r.max_norm != Rat(1, 2)) {
      detail = "sup over selections != 1/2 in member " + std::to_string(i);
      return false;
    }
  }
  detail = std::to_string(family.size()) + " family members checked";
  return true;
}

bool forced_relations(std::string& detail) {
  // d = 1, k = 1: a non-zero singleton coefficient must fail the invariance
  // check (t = 2t), the zero one must pass.
  {
    TorusPolynomial::CoeffMap coeffs;
    for (int i = 1; i <= 6; ++i) coeffs.emplace(IndexSet{i}, TorusPoint({Rat(1, 3)}));
    TorusPolynomial f(1, 1, std::move(coeffs));
    if (check_restriction_invariance(f, 1, 6, Rat(0)).ok) {
      detail = "non-zero linear coefficient slipped through";
      return false;
    }
    if (!check_restriction_invariance(TorusPolynomial::zero(1, 1), 1, 6, Rat(0)).ok) {
      detail = "zero polynomial rejected";
      return false;
    }
  }
  // d = 2, k = 2: invariance at window >= 6 forces a13 = -a1, a24 = -a2,
  // a12 + a23 = 0, and holds whenever they do.
  SplitMix64 rng(808);
  int passing = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Rat a1 = random_rat(rng, 10), a2 = random_rat(rng, 10), a12 = random_rat(rng, 10);
    Rat a23, a13, a24;
    if (trial % 2 == 0) {
      a13 = mod_one(-a1);
      a24 = mod_one(-a2);
      a23 = mod_one(-a12);
    } else {
      a23 = random_rat(rng, 10);
      a13 = random_rat(rng, 10);
      a24 = random_rat(rng, 10);
    }
    std::map<IndexSet, TorusPoint> reps;
    auto put = [&](std::initializer_list<int> g, const Rat& v) {
      if (mod_one(v) != 0) reps.emplace(IndexSet(g), TorusPoint({v}));
    };
    put({1}, a1);
    put({2}, a2);
    put({1, 2}, a12);
    put({2, 3}, a23);
    put({1, 3}, a13);
    put({2, 4}, a24);
    TorusPolynomial f = StableCoefficients(1, 2, 2, std::move(reps)).materialize(8);
    bool relations = mod_one(a13 + a1) == 0 && mod_one(a24 + a2) == 0 &&
                     mod_one(a12 + a23) == 0;
    bool invariant = check_restriction_invariance(f, 2, 8, Rat(0)).ok;
    if (invariant != relations) {
      detail = "relations and invariance disagreed at trial " + std::to_string(trial);
      return false;
    }
    if (invariant) ++passing;
  }
  if (passing < 20) {
    detail = "constructed relation instances did not pass";
    return false;
  }
  return true;
}

bool lattice_reduction_checks(std::string& detail) {
  SplitMix64 rng(909);
  auto random_g = [&](int n) {
    Unitriangular g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        long long den = rng.range(1, 12);
        g.set(i, j, Rat(rng.range(-4 * den, 4 * den), den));
      }
    return g;
  };
  auto random_gamma = [&](int n) {
    Unitriangular g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.set(i, j, Rat(rng.range(-3, 3)));
    return g;
  };
  // 1000 checks of each property on each group size
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = (trial % 2 == 0) ? 3 : 4;
    Unitriangular g = random_g(n);
    Unitriangular r = reduce_mod_lattice(g);
    if (!(reduce_mod_lattice(r) == r)) {
      detail = "idempotence failed";
      return false;
    }
    if (!(reduce_mod_lattice(g * random_gamma(n)) == r)) {
      detail = "right-lattice invariance failed";
      return false;
    }
    if (dist_to_identity(g, 2) != dist_to_identity(g, 4)) {
      detail = "radius-2 and radius-4 distances disagreed";
      return false;
    }
  }
  return true;
}

bool hk_membership_oracle(std::string& detail) {
  const int q = 5;
  std::uint64_t sampled = 0;
  for (int r = 1; r <= 3; ++r) {
    for (int d = 1; d <= 2; ++d) {
      const int cells = 1 << r;
      std::vector<std::vector<int>> generators;
      for (Vertex w = 0; w < (Vertex{1} << r); ++w) {
        if (__builtin_popcount(w) > d) continue;
        std::vector<int> vec(static_cast<std::size_t>(cells), 0);
        for (Vertex s = 0; s < (Vertex{1} << r); ++s)
          if ((s & w) == w) vec[s] = 1;
        generators.push_back(std::move(vec));
      }
      std::uint32_t space = 1;
      for (int i = 0; i < cells; ++i) space *= q;
      auto encode = [&](const std::vector<int>& v) {
        std::uint32_t code = 0;
        for (int i = cells - 1; i >= 0; --i)
          code = code * q + static_cast<std::uint32_t>(v[static_cast<std::size_t>(i)]);
        return code;
      };
      std::vector<bool> in_group(space, false);
      std::vector<std::vector<int>> queue = {std::vector<int>(cells, 0)};
      in_group[0] = true;
      while (!queue.empty()) {
        auto cur = queue.back();
        queue.pop_back();
        for (const auto& gen : generators) {
          std::vector<int> nxt(cur);
          for (int i = 0; i < cells; ++i)
            nxt[static_cast<std::size_t>(i)] =
                (nxt[static_cast<std::size_t>(i)] + gen[static_cast<std::size_t>(i)]) % q;
          std::uint32_t code = encode(nxt);
          if (!in_group[code]) {
            in_group[code] = true;
            queue.push_back(std::move(nxt));
          }
        }
      }
      SplitMix64 rng(1000 + static_cast<std::uint64_t>(10 * r + d));
      const int trials = 1700;
      for (int t = 0; t < trials; ++t) {
        std::vector<int> v(static_cast<std::size_t>(cells));
        std::vector<TorusPoint> pts;
        for (int i = 0; i < cells; ++i) {
          v[static_cast<std::size_t>(i)] = static_cast<int>(rng.range(0, q - 1));
          pts.push_back(TorusPoint({Rat(v[static_cast<std::size_t>(i)], q)}));
        }
        TorusCube c(r, d, pts);
        if (is_hk_cube_abelian(c) != static_cast<bool>(in_group[encode(v)])) {
          detail = "disagreement at r=" + std::to_string(r) + " d=" + std::to_string(d);
          return false;
        }
        ++sampled;
      }
    }
  }
  detail = std::to_string(sampled) + " cubes sampled";
  return sampled >= 10000;
}

bool determinism_via_cli(std::string& detail) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "nilbohr-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name);
    out << text;
  };
  write("a.json",
        R"({"name":"ga","p":["0/1","408/577"],"sequence":"id","k":2,"epsilon":"1/20","N":16})");
  write("b.json",
        R"({"name":"gb","g":[["1","3363/2378","0"],["0","1","1393/985"],["0","0","1"]],"sequence":"id","k":3,"epsilon":"1/10","N":14})");
  write("c.json",
        R"({"name":"gc","k":3,"d":2,"l":3,"family":{"block_count":8,"max_slack":1,"index":5}})");
  write("d.json",
        R"({"name":"gd","sequence":"pow:2","length":12,"k":2,"bound":500})");
  struct Golden {
    const char* command;
    const char* cfg;
    const char* name;
  } goldens[] = {{"thm-a", "a.json", "ga"},
                 {"thm-b", "b.json", "gb"},
                 {"counterexample", "c.json", "gc"},
                 {"sg-enum", "d.json", "gd"}};
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  for (const auto& g : goldens) {
    for (int workers : {1, 4}) {
      std::string out = (dir / (std::string("w") + std::to_string(workers))).string();
      std::string cmd = std::string(NILBOHR_CLI_PATH) + " " + g.command + " --config " +
                        (dir / g.cfg).string() + " --out " + out + " --workers " +
                        std::to_string(workers) + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        detail = std::string("CLI run failed for ") + g.name;
        return false;
      }
    }
    std::string one = slurp(dir / "w1" / (std::string(g.name) + ".json"));
    std::string four = slurp(dir / "w4" / (std::string(g.name) + ".json"));
    if (one.empty() || one != four) {
      detail = std::string("byte mismatch for ") + g.name;
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "inclusion-exclusion roundtrip, 200 random polynomials", 5.0,
            inclusion_exclusion_roundtrip);
  criterion(2, "lifted integer polynomials vanish beyond their degree", 5.0,
            degree_vanishing);
  criterion(3, "parallelepiped alternating sums vanish for matching degree", 10.0,
            parallelepiped_sums);
  criterion(4, "alternating-half values are exactly 1/2 on late blocks", 10.0,
            counterexample_exactness);
  criterion(5, "polynomial recurrence at desk scale (k = 2 quadratics)", 300.0,
            theorem_a_desk_scale);
  criterion(6, "orbit recurrence on the 3x3 group (k = 3)", 600.0, theorem_b_heisenberg);
  criterion(7, "sharpness regime: no selection family beats 1/2", 120.0, sharpness_regime);
  criterion(8, "restriction invariance forces the window relations", 10.0, forced_relations);
  criterion(9, "lattice reduction: idempotent, invariant, radius-stable", 30.0,
            lattice_reduction_checks);
  criterion(10, "cube membership agrees with the generator-closure oracle", 120.0,
            hk_membership_oracle);
  criterion(11, "golden instances are byte-identical across worker counts", 120.0,
            determinism_via_cli);

  if (failures == 0) {
    std::cout << "acceptance: all 11 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria FAILED\n";
  return 1;
}
