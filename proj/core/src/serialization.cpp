#include "nilbohr/serialization.hpp"

#include <stdexcept>

namespace nilbohr {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("field '" + field + "': " + why);
}

}  // namespace

Json to_json(const Rat& q) { return rat_str(q); }

Rat rat_from_json(const Json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a \"p/q\" string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

Json to_json(const IndexSet& s) {
  Json out = Json::array();
  for (int x : s.elements()) out.push_back(x);
  return out;
}

IndexSet index_set_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of integers");
  std::vector<int> elems;
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail(field, "expected integer elements");
    elems.push_back(v.get<int>());
  }
  try {
    return IndexSet(elems);
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

Json to_json(const BlockSequence& b) {
  Json out = Json::array();
  for (const auto& blk : b.blocks()) out.push_back(to_json(blk));
  return out;
}

BlockSequence block_sequence_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of index sets");
  std::vector<IndexSet> blocks;
  for (std::size_t i = 0; i < j.size(); ++i)
    blocks.push_back(index_set_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  try {
    return BlockSequence(std::move(blocks));
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

Json to_json(const TorusPoint& p) {
  Json out = Json::array();
  for (const auto& c : p.coords()) out.push_back(rat_str(c));
  return out;
}

TorusPoint torus_point_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rationals");
  std::vector<Rat> coords;
  for (std::size_t i = 0; i < j.size(); ++i)
    coords.push_back(rat_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return TorusPoint(std::move(coords));
}

Json to_json(const TorusPolynomial& f) {
  Json out;
  out["m"] = f.dim();
  out["d"] = f.degree();
  Json coeffs = Json::array();
  for (const auto& [gamma, a] : f.coeffs()) {
    Json entry;
    entry["gamma"] = to_json(gamma);
    entry["a"] = to_json(a);
    coeffs.push_back(std::move(entry));
  }
  out["coeffs"] = std::move(coeffs);
  return out;
}

TorusPolynomial torus_polynomial_from_json(const Json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  if (!j.contains("m") || !j["m"].is_number_integer()) fail(field + ".m", "expected integer");
  if (!j.contains("d") || !j["d"].is_number_integer()) fail(field + ".d", "expected integer");
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    fail(field + ".coeffs", "expected array");
  int m = j["m"].get<int>();
  int d = j["d"].get<int>();
  TorusPolynomial::CoeffMap coeffs;
  const auto& arr = j["coeffs"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& entry = arr[i];
    const std::string where = field + ".coeffs[" + std::to_string(i) + "]";
    if (!entry.is_object() || !entry.contains("gamma") || !entry.contains("a"))
      fail(where, "expected {gamma, a}");
    IndexSet gamma = index_set_from_json(entry["gamma"], where + ".gamma");
    TorusPoint a = torus_point_from_json(entry["a"], where + ".a");
    if (a.dim() != m) fail(where + ".a", "dimension mismatch");
    coeffs.emplace(std::move(gamma), std::move(a));
  }
  try {
    return TorusPolynomial(m, d, std::move(coeffs));
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

Json to_json(const Unitriangular& g) {
  Json out = Json::array();
  for (int i = 0; i < g.size(); ++i) {
    Json row = Json::array();
    for (int j2 = 0; j2 < g.size(); ++j2) row.push_back(rat_str(g.at(i, j2)));
    out.push_back(std::move(row));
  }
  return out;
}

Unitriangular unitriangular_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty matrix");
  const int n = static_cast<int>(j.size());
  std::vector<Rat> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(field, "matrix must be square");
    for (int c = 0; c < n; ++c)
      entries.push_back(
          rat_from_json(row[static_cast<std::size_t>(c)],
                        field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
  }
  try {
    return Unitriangular(n, std::move(entries));
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

}  // namespace nilbohr
