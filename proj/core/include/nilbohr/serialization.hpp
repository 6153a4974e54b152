#pragma once

#include <json.hpp>

#include "nilbohr/block_sequence.hpp"
#include "nilbohr/cube.hpp"
#include "nilbohr/index_set.hpp"
#include "nilbohr/torus_poly.hpp"
#include "nilbohr/unitriangular.hpp"

namespace nilbohr {

// Result files must be byte-identical across runs and worker counts, so
// everything serialises through ordered_json and rationals travel as exact
// "p/q" strings.
using Json = nlohmann::ordered_json;

Json to_json(const Rat& q);
Rat rat_from_json(const Json& j, const std::string& field);

Json to_json(const IndexSet& s);
IndexSet index_set_from_json(const Json& j, const std::string& field);

Json to_json(const BlockSequence& b);
BlockSequence block_sequence_from_json(const Json& j, const std::string& field);

Json to_json(const TorusPoint& p);
TorusPoint torus_point_from_json(const Json& j, const std::string& field);

// { "m": int, "d": int, "coeffs": [ { "gamma": [ints], "a": ["p/q", ...] } ] }
Json to_json(const TorusPolynomial& f);
TorusPolynomial torus_polynomial_from_json(const Json& j, const std::string& field);

// row-major matrix of "p/q" strings
Json to_json(const Unitriangular& g);
Unitriangular unitriangular_from_json(const Json& j, const std::string& field);

}  // namespace nilbohr
