#pragma once

#include <nlohmann/json.hpp>

#include "minflex/flexcheck.hpp"
#include "minflex/psh.hpp"
#include "minflex/weierstrass.hpp"

namespace minflex {

using nlohmann::json;

// Accepts a file path or inline JSON text (anything starting with '{' or '[').
json load_json(const std::string& path_or_inline);

// Body descriptor: {"dim", "halfspaces": [{"a": [...], "b": ...}],
// "support": "ball|cylinder|disc-product|none", "params", "lineality_hint"}.
ConvexBody body_from_json(const json& j);
json body_to_json(const ConvexBody& C);

// Domain descriptor with a "variant" discriminator.
DomainSpec domain_from_json(const json& j);
json domain_to_json(const DomainSpec& omega);

// Expression trees: {"op": "...", ...}; tau spec adds the evaluation box.
ExprPtr expr_from_json(const json& j);
ScalarField field_from_json(const json& j);  // {"expr": ..., "box": {"lo","hi"}}

json witness_to_json(const Witness& w);
json classification_to_json(const ClassificationResult& r);
json psh_report_to_json(const PshReport& r);
json p_convex_to_json(const PConvexCertificate& c);
json conformality_to_json(const ConformalityReport& r);
json containment_to_json(const ContainmentReport& r);
json arc_to_json(const ArcExtension& a);

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j);

}  // namespace minflex
