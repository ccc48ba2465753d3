#pragma once

#include <string>

#include <json.hpp>

#include "theorem.hpp"

namespace wc {

/// Insert-ordered JSON keeps report layout stable; double serialization is
/// shortest-round-trip, so identical values always print identically — both
/// are load-bearing for the byte-identical-report guarantee.
using json = nlohmann::ordered_json;

json complex_json(cplx z);
cplx complex_from_json(const json& j);

json laurent_json(const LaurentPoly& h);
LaurentPoly laurent_from_json(const json& j);

json theorem_config_json(const TheoremConfig& c);
TheoremConfig theorem_config_from_json(const json& j);

/// Full-fidelity case entry; wall time is intentionally absent (it lives in
/// the report's meta block, outside the determinism boundary).
json verification_json(const VerificationReport& r);
VerificationReport verification_from_json(const json& j);

/// Flat summary: one row per case.
std::string csv_header();
std::string csv_row(const VerificationReport& r);

/// Shortest-round-trip decimal for doubles in CSV cells.
std::string format_double(double x);

}  // namespace wc
