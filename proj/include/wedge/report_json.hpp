#pragma once

#include <string>

#include <json.hpp>

#include "wedge/gk.hpp"
#include "wedge/positivity.hpp"
#include "wedge/spectra.hpp"

namespace wedge {

using Json = nlohmann::ordered_json;

Json to_json(const Complex& z);
Json to_json(const TNCertificate& c);
Json to_json(const SignChangeCount& s);
Json to_json(const GKReport& r);
Json to_json(const VerificationReport& r);

/// Pretty JSON with a trailing newline.
std::string render_json(const Json& j);

/// One "dotted.path: value" line per scalar leaf; scalars are rendered exactly
/// as in render_json.
std::string render_text(const Json& j);

}  // namespace wedge
