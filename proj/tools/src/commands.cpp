#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nilbohr/convergents.hpp"
#include "nilbohr/cube.hpp"
#include "nilbohr/search.hpp"
#include "nilbohr/sequence_spec.hpp"
#include "nilbohr/serialization.hpp"
#include "witness_check.hpp"

namespace nilbohr::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

const Json& need(const Json& j, const std::string& key) {
  if (!j.contains(key))
    throw std::invalid_argument("field '" + key + "': missing");
  return j[key];
}

int need_int(const Json& j, const std::string& key) {
  const Json& v = need(j, key);
  if (!v.is_number_integer())
    throw std::invalid_argument("field '" + key + "': expected an integer");
  return v.get<int>();
}

int opt_int(const Json& j, const std::string& key, int fallback) {
  return j.contains(key) ? need_int(j, key) : fallback;
}

long long need_ll(const Json& j, const std::string& key) {
  const Json& v = need(j, key);
  if (!v.is_number_integer())
    throw std::invalid_argument("field '" + key + "': expected an integer");
  return v.get<long long>();
}

std::string need_str(const Json& j, const std::string& key) {
  const Json& v = need(j, key);
  if (!v.is_string())
    throw std::invalid_argument("field '" + key + "': expected a string");
  return v.get<std::string>();
}

Rat need_rat(const Json& j, const std::string& key) { return rat_from_json(need(j, key), key); }

std::vector<Rat> rat_list(const Json& j, const std::string& key) {
  const Json& v = need(j, key);
  if (!v.is_array()) throw std::invalid_argument("field '" + key + "': expected an array");
  std::vector<Rat> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(rat_from_json(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

Json outcome_json(const SearchOutcome& o) {
  Json j;
  j["witness"] = o.witness ? to_json(*o.witness) : Json(nullptr);
  j["block_witness"] = o.block_witness ? to_json(*o.block_witness) : Json(nullptr);
  j["value"] = rat_str(o.value);
  j["best_value"] = rat_str(o.best_value);
  j["sets_examined"] = o.sets_examined;
  j["canonical_rank"] = o.canonical_rank;
  j["exhaustive"] = o.exhaustive;
  j["exploratory"] = o.exploratory;
  return j;
}

std::vector<std::vector<Rat>> matrix_of(const Unitriangular& g) {
  std::vector<std::vector<Rat>> m(static_cast<std::size_t>(g.size()),
                                  std::vector<Rat>(static_cast<std::size_t>(g.size())));
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (i == j) ? Rat(1) : (i < j ? g.at(i, j) : Rat(0));
    }
  return m;
}

struct Emitted {
  Json result;
  std::string csv_witness;
  std::string csv_value;
  std::string csv_examined;
  std::string csv_exhaustive;
};

// Independent morphism check used by the divisible verifier: bitmask
// enumeration, no shared code with maps_syndetic.
bool unions_stay_syndetic(const std::vector<std::vector<int>>& blocks, int k) {
  const int len = static_cast<int>(blocks.size());
  for (std::uint32_t mask = 1; mask < (1u << len); ++mask) {
    // selection must itself have index gaps <= k
    int prev = -1;
    bool sel_ok = true;
    for (int i = 0; i < len; ++i)
      if (mask & (1u << i)) {
        if (prev >= 0 && i - prev > k) sel_ok = false;
        prev = i;
      }
    if (!sel_ok) continue;
    std::vector<int> u;
    for (int i = 0; i < len; ++i)
      if (mask & (1u << i)) u.insert(u.end(), blocks[static_cast<std::size_t>(i)].begin(),
                                     blocks[static_cast<std::size_t>(i)].end());
    std::sort(u.begin(), u.end());
    for (std::size_t t = 1; t < u.size(); ++t)
      if (u[t] - u[t - 1] > k) return false;
  }
  return true;
}

Emitted run_thm_a(const Json& cfg, int workers) {
  RationalPolynomial p(rat_list(cfg, "p"));
  const int depth = need_int(cfg, "N");
  const int k = need_int(cfg, "k");
  const Rat eps = need_rat(cfg, "epsilon");
  auto n = sequence_spec(need_str(cfg, "sequence"), depth);

  SearchOutcome o = search_polynomial_recurrence(p, n, k, eps, depth, workers);
  if (o.witness) {
    Rat again = check::poly_witness_value(p.coeffs(), n, o.witness->elements());
    if (again != o.value || again > eps ||
        !check::valid_candidate(o.witness->elements(), k, depth))
      throw std::logic_error("witness failed independent re-verification");
  }
  Emitted e;
  e.result["outcome"] = outcome_json(o);
  e.result["verified"] = o.witness.has_value();
  e.csv_witness = o.witness ? to_json(*o.witness).dump() : "";
  e.csv_value = rat_str(o.witness ? o.value : o.best_value);
  e.csv_examined = std::to_string(o.sets_examined);
  e.csv_exhaustive = o.exhaustive ? "true" : "false";
  return e;
}

Emitted run_thm_b(const Json& cfg, int workers, bool staged) {
  Unitriangular g = unitriangular_from_json(need(cfg, "g"), "g");
  const int depth = need_int(cfg, "N");
  const int default_k = g.size() * (g.size() - 1) / 2;
  const int k = opt_int(cfg, "k", default_k);
  const Rat eps = need_rat(cfg, "epsilon");
  auto n = sequence_spec(need_str(cfg, "sequence"), depth);

  SearchOutcome o = staged
                        ? search_orbit_staged(g, n, k, eps, depth, opt_int(cfg, "pool", 32))
                        : search_orbit_recurrence(g, n, k, eps, depth, workers);
  if (o.witness) {
    long long e = 0;
    for (int i : o.witness->elements()) e += n[static_cast<std::size_t>(i - 1)];
    Rat again = check::orbit_witness_value(matrix_of(g), e);
    if (again != o.value || again > eps ||
        !check::valid_candidate(o.witness->elements(), k, depth))
      throw std::logic_error("witness failed independent re-verification");
  }
  Emitted e;
  e.result["outcome"] = outcome_json(o);
  e.result["verified"] = o.witness.has_value();
  e.csv_witness = o.witness ? to_json(*o.witness).dump() : "";
  e.csv_value = rat_str(o.witness ? o.value : o.best_value);
  e.csv_examined = std::to_string(o.sets_examined);
  e.csv_exhaustive = o.exhaustive ? "true" : "false";
  return e;
}

Emitted run_sg_enum(const Json& cfg) {
  const int length = need_int(cfg, "length");
  const int k = need_int(cfg, "k");
  const long long bound = need_ll(cfg, "bound");
  auto n = sequence_spec(need_str(cfg, "sequence"), length);
  auto sums = sg_enumerate(n, k, bound);
  Emitted e;
  Json arr = Json::array();
  for (long long s : sums) arr.push_back(s);
  e.result["outcome"]["sums"] = std::move(arr);
  e.result["outcome"]["count"] = sums.size();
  e.result["verified"] = true;
  e.csv_examined = std::to_string(sums.size());
  return e;
}

Emitted run_counterexample(const Json& cfg) {
  const int k = need_int(cfg, "k");
  const int d = need_int(cfg, "d");
  const int l = need_int(cfg, "l");
  BlockSequence blocks =
      cfg.contains("blocks")
          ? block_sequence_from_json(need(cfg, "blocks"), "blocks")
          : [&] {
              const Json& fam = need(cfg, "family");
              auto family = canonical_block_family(k, need_int(fam, "block_count"),
                                                   need_int(fam, "max_slack"));
              const int index = need_int(fam, "index");
              if (index < 0 || index >= static_cast<int>(family.size()))
                throw std::invalid_argument("field 'family.index': out of range (size " +
                                            std::to_string(family.size()) + ")");
              return family[static_cast<std::size_t>(index)];
            }();

  SharpnessReport r = verify_sharpness(k, d, l, blocks);
  Emitted e;
  Json rep;
  rep["in_sharpness_regime"] = r.in_sharpness_regime;
  Json vals = Json::array();
  for (const auto& v : r.block_values) vals.push_back(rat_str(v));
  rep["block_values"] = std::move(vals);
  rep["all_half_from_l"] = r.all_half_from_l;
  rep["covering_ok"] = r.covering_ok;
  rep["min_norm"] = rat_str(r.min_norm);
  rep["max_norm"] = rat_str(r.max_norm);
  rep["argmin_beta"] = r.argmin_beta ? to_json(*r.argmin_beta) : Json(nullptr);
  rep["betas_checked"] = r.betas_checked;
  e.result["report"] = std::move(rep);
  e.result["verified"] = r.all_half_from_l && r.covering_ok;
  e.csv_value = rat_str(r.min_norm);
  e.csv_examined = std::to_string(r.betas_checked);
  return e;
}

Emitted run_divisible(const Json& cfg) {
  const int length = need_int(cfg, "length");
  const int k = need_int(cfg, "k");
  const long long m = need_ll(cfg, "m");
  const int target = need_int(cfg, "target_length");
  auto n = sequence_spec(need_str(cfg, "sequence"), length);

  DivisibleBlocksResult r = find_divisible_blocks(n, k, m, target);
  bool verified = false;
  if (r.blocks) {
    // independent re-check: sums, per-block gaps, union syndeticity
    std::vector<std::vector<int>> raw;
    for (const auto& blk : r.blocks->blocks()) raw.push_back(blk.elements());
    verified = true;
    for (const auto& blk : raw) {
      long long s = 0;
      for (std::size_t t = 0; t < blk.size(); ++t) {
        s += n[static_cast<std::size_t>(blk[t] - 1)];
        if (t > 0 && blk[t] - blk[t - 1] > k) verified = false;
      }
      if (s % m != 0) verified = false;
    }
    if (!unions_stay_syndetic(raw, k)) verified = false;
    if (!verified) throw std::logic_error("witness failed independent re-verification");
  }

  Emitted e;
  e.result["outcome"]["blocks"] = r.blocks ? to_json(*r.blocks) : Json(nullptr);
  e.result["outcome"]["note"] = r.note;
  Json stats = Json::array();
  for (std::size_t r2 = 0; r2 < r.residue_stats.size(); ++r2) {
    Json stream = Json::array();
    for (const auto& [residue, count] : r.residue_stats[r2]) {
      Json item;
      item["residue"] = residue;
      item["count"] = count;
      stream.push_back(std::move(item));
    }
    stats.push_back(std::move(stream));
  }
  e.result["outcome"]["residue_stats"] = std::move(stats);
  e.result["verified"] = verified;
  e.csv_witness = r.blocks ? to_json(*r.blocks).dump() : "";
  return e;
}

Emitted run_poly_check(const Json& cfg) {
  TorusPolynomial f = torus_polynomial_from_json(need(cfg, "polynomial"), "polynomial");
  const int k = need_int(cfg, "k");
  auto stable = is_stable_form(f, k);
  Emitted e;
  Json rep;
  rep["stable"] = stable.ok;
  rep["stable_violations"] = stable.violations;
  if (stable.ok) {
    const int window = opt_int(cfg, "window", 3 * k);
    const Rat tol = cfg.contains("tol") ? need_rat(cfg, "tol") : Rat(0);
    auto inv = check_restriction_invariance(f, k, window, tol);
    rep["invariant"] = inv.ok;
    rep["invariance_violations"] = inv.violations;
    rep["restrictions_checked"] = inv.restrictions_checked;
    e.csv_examined = std::to_string(inv.restrictions_checked);
    e.csv_value = inv.ok ? "pass" : "fail";
  } else {
    rep["invariant"] = Json(nullptr);
    e.csv_value = "not-stable";
  }
  e.result["report"] = std::move(rep);
  e.result["verified"] = true;
  return e;
}

Emitted run_hk_check(const Json& cfg) {
  const Json& cube_j = need(cfg, "cube");
  const int r = need_int(cube_j, "r");
  const int d = need_int(cube_j, "d");
  const Json& vals = need(cube_j, "values");
  if (!vals.is_array() || vals.size() != (std::size_t{1} << r))
    throw std::invalid_argument("field 'cube.values': expected 2^r vertex entries");
  std::vector<TorusPoint> points;
  for (std::size_t i = 0; i < vals.size(); ++i)
    points.push_back(torus_point_from_json(vals[i], "cube.values[" + std::to_string(i) + "]"));

  Emitted e;
  if (cfg.contains("complete_corner") && cfg["complete_corner"].get<bool>()) {
    TorusPoint corner = complete_corner_abelian(r, d, points);
    points[(std::size_t{1} << r) - 1] = corner;
    e.result["report"]["completed_corner"] = to_json(corner);
    TorusCube cube(r, d, points);
    e.result["report"]["member"] = is_hk_cube_abelian(cube);
  } else {
    TorusCube cube(r, d, points);
    e.result["report"]["member"] = is_hk_cube_abelian(cube);
  }
  e.result["verified"] = true;
  return e;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void run_command(const RunOptions& options) {
  std::ifstream in(options.config_path);
  if (!in) throw std::invalid_argument("cannot open config " + options.config_path);
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (options.workers < 1) throw std::invalid_argument("workers must be >= 1");

  const std::string name = cfg.contains("name") ? need_str(cfg, "name") : "result";

  const auto t0 = std::chrono::steady_clock::now();
  Emitted e;
  if (options.command == "thm-a") {
    e = run_thm_a(cfg, options.workers);
  } else if (options.command == "thm-b") {
    e = run_thm_b(cfg, options.workers, /*staged=*/false);
  } else if (options.command == "staged") {
    e = run_thm_b(cfg, options.workers, /*staged=*/true);
  } else if (options.command == "sg-enum") {
    e = run_sg_enum(cfg);
  } else if (options.command == "counterexample") {
    e = run_counterexample(cfg);
  } else if (options.command == "divisible") {
    e = run_divisible(cfg);
  } else if (options.command == "poly-check") {
    e = run_poly_check(cfg);
  } else if (options.command == "hk-check") {
    e = run_hk_check(cfg);
  } else {
    throw std::invalid_argument("unknown command " + options.command);
  }
  const auto t1 = std::chrono::steady_clock::now();
  const long long wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

  Json result;
  result["name"] = name;
  result["command"] = options.command;
  result["version"] = kVersion;
  result["config"] = cfg;
  for (auto& [key, value] : e.result.items()) result[key] = value;

  std::filesystem::create_directories(options.out_dir);
  std::filesystem::path base = std::filesystem::path(options.out_dir) / name;
  write_text(base.string() + ".json", result.dump(2) + "\n");

  std::ostringstream csv;
  csv << "name,command,k,epsilon,N,witness,value,sets_examined,exhaustive,wall_ms\n";
  csv << csv_escape(name) << ',' << options.command << ','
      << (cfg.contains("k") ? std::to_string(need_int(cfg, "k")) : "") << ','
      << (cfg.contains("epsilon") ? need_str(cfg, "epsilon") : "") << ','
      << (cfg.contains("N") ? std::to_string(need_int(cfg, "N")) : "") << ','
      << csv_escape(e.csv_witness) << ',' << csv_escape(e.csv_value) << ','
      << e.csv_examined << ',' << e.csv_exhaustive << ',' << wall_ms << "\n";
  write_text(base.string() + ".csv", csv.str());

  if (options.emit_latex) {
    std::ostringstream tex;
    tex << "\\begin{tabular}{ll}\n";
    tex << "name & " << name << " \\\\\n";
    tex << "command & " << options.command << " \\\\\n";
    if (!e.csv_value.empty()) tex << "value & $" << e.csv_value << "$ \\\\\n";
    if (!e.csv_witness.empty()) tex << "witness & " << e.csv_witness << " \\\\\n";
    if (!e.csv_examined.empty()) tex << "examined & " << e.csv_examined << " \\\\\n";
    tex << "\\end{tabular}\n";
    write_text(base.string() + ".tex", tex.str());
  }
}

}  // namespace nilbohr::cli
