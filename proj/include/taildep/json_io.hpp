#ifndef TAILDEP_JSON_IO_HPP
#define TAILDEP_JSON_IO_HPP

#include <json.hpp>

#include "taildep/depcalc.hpp"
#include "taildep/distmodel.hpp"
#include "taildep/simest.hpp"

namespace taildep {

using json = nlohmann::json;

// tail classes: {"kind": "...", ...params}
json tail_class_to_json(const TailClass& c);
TailClass tail_class_from_json(const json& j);

// univariate models: {"family": "...", "params": {...}}
json model_to_json(const UnivariateModel& m);
ModelPtr model_from_json(const json& j);

// norms: {"kind": "lp"|"linf"|"theta_mix"|"mahalanobis"|"custom_table", ...}
json norm_to_json(const Norm& n);
NormPtr norm_from_json(const json& j);

// angular models: {"kind": "...", ...}
json angular_to_json(const AngularModel& a);
AngularPtr angular_from_json(const json& j);

// constructions: {"spec_version": 1, "radial": {...}, "angular": {...}} or
// {"spec_version": 1, "preset": "model1"|"model2", ...params}
json spec_to_json(const ConstructionSpec& spec);
ConstructionSpec spec_from_json(const json& j);

json coefficient_to_json(const Coefficient& c);
Coefficient coefficient_from_json(const json& j);

json summary_to_json(const DependenceSummary& s);
DependenceSummary summary_from_json(const json& j);

json verify_report_to_json(const VerifyReport& r);

}  // namespace taildep

#endif
