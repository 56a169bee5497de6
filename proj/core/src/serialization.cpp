#include "qjm/serialization.hpp"

#include <cstdio>

namespace qjm {

void to_json(nlohmann::json& j, const Effect& e) {
  j = nlohmann::json{{"alpha", e.alpha}, {"a", {e.a.x, e.a.y, e.a.z}}};
}

void from_json(const nlohmann::json& j, Effect& e) {
  const auto& a = j.at("a");
  if (!a.is_array() || a.size() != 3) {
    throw Error("Effect JSON: \"a\" must be an array of three numbers");
  }
  e = make_effect(j.at("alpha").get<double>(),
                  {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()});
}

void to_json(nlohmann::json& j, const SimpleObservable& o) {
  j = nlohmann::json{{"plus", o.plus}};
}

void from_json(const nlohmann::json& j, SimpleObservable& o) {
  if (j.contains("plus")) {
    o.plus = j.at("plus").get<Effect>();
  } else {
    o.plus = j.get<Effect>();
  }
}

void to_json(nlohmann::json& j, const SharpnessReport& r) {
  j = nlohmann::json{{"width", r.width},
                     {"product_width", r.product_width},
                     {"sharpness", r.sharpness},
                     {"unsharpness", r.unsharpness}};
}

void to_json(nlohmann::json& j, const JointObservable& g) {
  j = nlohmann::json{
      {"gpp", g.gpp}, {"gpm", g.gpm}, {"gmp", g.gmp}, {"gmm", g.gmm}};
}

void from_json(const nlohmann::json& j, JointObservable& g) {
  g.gpp = j.at("gpp").get<Effect>();
  g.gpm = j.at("gpm").get<Effect>();
  g.gmp = j.at("gmp").get<Effect>();
  g.gmm = j.at("gmm").get<Effect>();
  const double res = joint_sum_residual(g);
  if (res > 1e-10) {
    throw Error("JointObservable JSON: components sum to identity only "
                "within " +
                std::to_string(res));
  }
}

std::string to_string(JmStatus s) {
  switch (s) {
    case JmStatus::JointlyMeasurable:
      return "JointlyMeasurable";
    case JmStatus::NotJointlyMeasurable:
      return "NotJointlyMeasurable";
    case JmStatus::Undetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

void to_json(nlohmann::json& j, const JmVerdict& v) {
  j = nlohmann::json{{"status", to_string(v.status)}, {"margin", v.margin}};
  if (v.witness) {
    j["witness"] = *v.witness;
  } else {
    j["witness"] = nullptr;
  }
}

void to_json(nlohmann::json& j, const BoundaryCurve& c) {
  nlohmann::json samples = nlohmann::json::array();
  for (const BoundarySample& s : c.samples) {
    samples.push_back({{"d1", s.d1},
                       {"d2min", s.d2min},
                       {"witness_ax", s.ax},
                       {"witness_ay", s.ay},
                       {"witness_bx", s.bx},
                       {"witness_by", s.by}});
  }
  j = nlohmann::json{{"theta", c.theta},
                     {"samples", std::move(samples)},
                     {"solver_meta",
                      {{"grid_resolution", c.grid_resolution},
                       {"refine_tol", c.refine_tol}}}};
}

std::string boundary_curve_csv(const BoundaryCurve& c) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "# theta=%.17g\n", c.theta);
  out += line;
  for (const BoundarySample& s : c.samples) {
    std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  s.d1, s.d2min, s.ax, s.ay, s.bx, s.by);
    out += line;
  }
  return out;
}

SimpleObservable parse_observable(const std::string& text) {
  return nlohmann::json::parse(text).get<SimpleObservable>();
}

}  // namespace qjm
