#pragma once

// JSON encodings and command-line text formats shared by the CLI and the
// pipeline. Weights are {"basis": "fw" | "root", "coords": [...]} where
// coordinates are integers or "p/q" strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "ksr/grading.hpp"
#include "ksr/oracle.hpp"
#include "ksr/series.hpp"

namespace ksr::io {

using nlohmann::json;
using linalg::RationalMatrix;
using rootdata::RootSystem;
using rootdata::Weight;

json weight_to_json(const Weight& w);
/// Accepts the encoded object or a bare array of fundamental-weight coordinates.
Weight weight_from_json(const json& j, const RootSystem& rs);

/// "1,0" in fundamental weights, or "root:1/2,1/2" over the simple roots.
Weight parse_weight(const std::string& text, const RootSystem& rs);
grading::GradingElement parse_grading(const std::string& text);
std::vector<int> parse_ints(const std::string& text);

json root_to_json(const rootdata::Root& r);
json character_to_json(const rootdata::VirtualCharacter& chi, const rootdata::Subsystem& sub);
json matrix_to_json(const RationalMatrix& m);

json grading_to_json(const grading::GradedDecomposition& gd);
json cohomology_to_json(const bott::CohomologyResult& r, const rootdata::Subsystem& sub);
/// {form, H, lambda, N, per_degree: [{k, dims, decomposition, violations}], verdict}.
json vanishing_to_json(const std::string& form, const series::VanishingReport& r, const grading::GradedDecomposition& gd,
                       const Weight& lambda, int N, const realform::KRootDatum& kd);
json qct_to_json(const series::QctReport& r, const series::QctOracleData& d);
json triple_to_json(const oracle::SL2Triple& t);

}  // namespace ksr::io
