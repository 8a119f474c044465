#pragma once

#include <string>

#include "json.hpp"

#include "gmalg/lie.hpp"
#include "gmalg/morita.hpp"
#include "gmalg/traces.hpp"

namespace gmalg {

// parse/validation failure; the message names the offending JSON path
struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

Json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j, const std::string& path = "$");

Json gma_to_json(const Gma& g);  // serializes the Morita context
Gma gma_from_json(const Json& j, const std::string& path = "$");

Json bilinear_to_json(const BilinearMap& q);
BilinearMap bilinear_from_json(const Json& j, std::size_t expect_dim, std::uint32_t p,
                               const std::string& path = "$");

Json linear_map_to_json(const LinearMap& l);
LinearMap linear_map_from_json(const Json& j, std::uint32_t p,
                               const std::string& path = "$");

Json vec_to_json(const Vec& v);

}  // namespace gmalg
