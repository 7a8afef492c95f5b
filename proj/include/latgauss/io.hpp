#pragma once

#include <string>

#include <json.hpp>

#include "latgauss/dual_attack.hpp"
#include "latgauss/qrs.hpp"
#include "latgauss/samplers.hpp"

namespace latgauss {

// Key order is fixed so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

Json basis_to_json(const Basis& basis);
Basis basis_from_json(const Json& j);

Json support_to_json(const TruncatedSupport& support);
TruncatedSupport support_from_json(const Json& j);

Json query_stats_to_json(const QueryStats& stats);

Json lwe_instance_to_json(const LweInstance& instance);

Json int_vec_to_json(const IntVec& v);
IntVec int_vec_from_json(const Json& j);
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

Basis load_basis_file(const std::string& path);

}  // namespace latgauss
