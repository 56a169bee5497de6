#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "qjm/approximation.hpp"
#include "qjm/effect.hpp"
#include "qjm/jointness.hpp"
#include "qjm/measures.hpp"

namespace qjm {

// JSON schemas (numbers are IEEE doubles at full precision):
//   Effect            {"alpha": number, "a": [x, y, z]}
//   SimpleObservable  {"plus": Effect}
//   SharpnessReport   {"width", "product_width", "sharpness", "unsharpness"}
//   JointObservable   {"gpp": Effect, "gpm": ..., "gmp": ..., "gmm": ...}
//   JmVerdict         {"status": string, "margin": number,
//                      "witness": Effect|null}

void to_json(nlohmann::json& j, const Effect& e);
/// Validates through make_effect; throws NotAnEffect on invalid coordinates.
void from_json(const nlohmann::json& j, Effect& e);

void to_json(nlohmann::json& j, const SimpleObservable& o);
/// Accepts either {"plus": Effect} or a bare Effect object.
void from_json(const nlohmann::json& j, SimpleObservable& o);

void to_json(nlohmann::json& j, const SharpnessReport& r);

void to_json(nlohmann::json& j, const JointObservable& g);
/// Validates each component and the sum-to-identity invariant (1e-10).
void from_json(const nlohmann::json& j, JointObservable& g);

std::string to_string(JmStatus s);
void to_json(nlohmann::json& j, const JmVerdict& v);

void to_json(nlohmann::json& j, const BoundaryCurve& c);

/// CSV export: a "# theta=<radians>" header line followed by one
/// "d1,d2min,witness_ax,witness_ay,witness_bx,witness_by" row per sample.
/// Byte-stable for fixed inputs.
std::string boundary_curve_csv(const BoundaryCurve& c);

/// Parses an observable from inline JSON text (either schema above).
SimpleObservable parse_observable(const std::string& text);

}  // namespace qjm
