#pragma once

#include <string>

#include "json.hpp"

#include "einlab/common.hpp"
#include "einlab/conformal4d.hpp"
#include "einlab/constants.hpp"

namespace einlab::report {

/// Reports keep key insertion order so identical runs emit identical bytes.
using json = nlohmann::ordered_json;

/// Rounds to 12 significant digits; all numbers in reports pass through this
/// so diffs are reproducible across runs.
double sig12(double v);
json num(double v);
std::string fmt(double v);  // the same 12-digit form, as text

/// A finite value or the string "-inf".
json ext(const ExtendedReal& v);
std::string fmt_ext(const ExtendedReal& v);

json conventions();
json tolerances();

/// The common report wrapper: version, command, echoed configuration,
/// conventions and tolerances, then the payload.
json envelope(const std::string& command, json config, json result);

json profile_json(const constants::EinProfile& p);
json bounds_json(const conformal4d::BoundReport& r);

std::string render(const json& j);

}  // namespace einlab::report
