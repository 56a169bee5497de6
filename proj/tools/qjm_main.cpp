// qjm: joint measurability of simple qubit observables from the command line.
//
// Subcommands: check, construct, measures, boundary, verify. All structured
// output is JSON on stdout (boundary defaults to CSV); diagnostics go to
// stderr. Exit codes: 0 jointly measurable / success, 1 not jointly
// measurable / infeasible parameters, 2 undetermined, 3 oracle disagreement
// or solver failure, 64 usage or input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qjm/approximation.hpp"
#include "qjm/effect.hpp"
#include "qjm/jointness.hpp"
#include "qjm/measures.hpp"
#include "qjm/oracle.hpp"
#include "qjm/serialization.hpp"

namespace {

constexpr int kExitJm = 0;
constexpr int kExitNotJm = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitDisagreement = 3;
constexpr int kExitUsage = 64;

[[noreturn]] void fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitUsage);
}

qjm::SimpleObservable load_observable(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) fail_usage("cannot open observable file '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return qjm::parse_observable(text);
  } catch (const std::exception& e) {
    fail_usage("invalid observable '" + arg + "': " + e.what());
  }
}

qjm::Vec3 parse_vec3(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      fail_usage("invalid vector component '" + item + "' in '" + text + "'");
    }
  }
  if (parts.size() != 3) fail_usage("vector '" + text + "' needs 3 components");
  return {parts[0], parts[1], parts[2]};
}

int run_check(const std::string& o1spec, const std::string& o2spec,
              double tol) {
  const qjm::SimpleObservable o1 = load_observable(o1spec);
  const qjm::SimpleObservable o2 = load_observable(o2spec);

  const qjm::JmVerdict verdict = qjm::decide_jm(o1, o2, tol);
  nlohmann::json report{
      {"verdict", qjm::to_string(verdict.status)},
      {"margin", verdict.margin},
      {"witness", verdict.witness ? nlohmann::json(*verdict.witness)
                                  : nlohmann::json(nullptr)},
      {"necessary", qjm::necessary_jm(o1, o2)},
      {"strong_sufficient", qjm::strong_sufficient_jm(o1, o2)},
      {"nontrivial", qjm::is_nontrivial_pair(o1, o2)},
      {"unsharpness_residual", qjm::unsharpness_product_residual(o1, o2)},
  };
  try {
    const qjm::SufficientReport s = qjm::sufficient_jm(o1, o2);
    report["sufficient"] = {{"holds", s.holds}, {"lhs", s.lhs}};
  } catch (const qjm::DegenerateDirection&) {
    report["sufficient"] = nullptr;
  }
  std::cout << report.dump(2) << "\n";
  switch (verdict.status) {
    case qjm::JmStatus::JointlyMeasurable:
      return kExitJm;
    case qjm::JmStatus::NotJointlyMeasurable:
      return kExitNotJm;
    case qjm::JmStatus::Undetermined:
      return kExitUndetermined;
  }
  return kExitUndetermined;
}

struct ConstructArgs {
  std::string kind;
  std::string a, b;
  std::string o1, o2;
  std::string u;
  double gamma = 0.0;
  bool gamma_set = false;
  double p = 0.0;
  double t = 0.0;
  bool t_set = false;
};

int run_construct(const ConstructArgs& args) {
  using qjm::JointObservable;
  using qjm::SimpleObservable;

  try {
    JointObservable joint;
    SimpleObservable target1, target2;

    if (args.kind == "jordan" || args.kind == "covariant" ||
        args.kind == "skewed" || args.kind == "symmetrized") {
      if (args.a.empty() || args.b.empty()) {
        fail_usage("construct " + args.kind + " requires --a and --b");
      }
      const qjm::Vec3 a = parse_vec3(args.a);
      const qjm::Vec3 b = parse_vec3(args.b);
      target1 = qjm::make_observable(1.0, a);
      target2 = qjm::make_observable(1.0, b);
      const qjm::UnitVector3 u = args.u.empty()
                                     ? qjm::orthogonal_unit(a, b)
                                     : qjm::UnitVector3::from(parse_vec3(args.u));
      if (args.kind == "jordan") {
        joint = qjm::jordan_joint(a, b);
      } else if (args.kind == "covariant") {
        if (!args.gamma_set) fail_usage("construct covariant requires --gamma");
        joint = qjm::covariant_joint(a, b, {args.gamma, args.p, u});
      } else {
        if (!args.t_set) {
          fail_usage("construct " + args.kind + " requires --t");
        }
        joint = qjm::skewed_joint(a, b, args.t);
        if (args.kind == "symmetrized") {
          joint = qjm::symmetrize_joint(joint, u);
        }
      }
    } else if (args.kind == "product" || args.kind == "trivial") {
      if (args.o1.empty() || args.o2.empty()) {
        fail_usage("construct " + args.kind + " requires --o1 and --o2");
      }
      target1 = load_observable(args.o1);
      target2 = load_observable(args.o2);
      const auto result = args.kind == "product"
                              ? qjm::product_joint(target1, target2)
                              : qjm::trivial_joint(target1, target2);
      if (!result) {
        std::cerr << "error: "
                  << (args.kind == "product"
                          ? "observables do not commute (a x b != 0)"
                          : "no trivial order relation holds between the pair")
                  << "\n";
        return kExitNotJm;
      }
      joint = *result;
    } else {
      fail_usage("unknown construction '" + args.kind + "'");
    }

    if (!qjm::is_joint_observable(joint)) {
      std::cerr << "error: constructed object violates the joint-observable "
                   "invariants\n";
      return kExitDisagreement;
    }
    const auto [m1, m2] = qjm::marginals(joint);
    const double marginal_residual = std::max(
        qjm::distance(m1, target1), qjm::distance(m2, target2));
    const qjm::UnitVector3 axis =
        qjm::orthogonal_unit(target1.plus.a, target2.plus.a);

    nlohmann::json out{
        {"joint", joint},
        {"verification",
         {{"marginal_residual", marginal_residual},
          {"sum_residual", qjm::joint_sum_residual(joint)},
          {"components_valid", true},
          {"covariant", qjm::is_covariant_joint(joint, axis)},
          {"informationally_complete",
           qjm::informational_completeness(joint)}}},
    };
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const qjm::Error& e) {
    std::cerr << "error: infeasible construction: " << e.what() << "\n";
    return kExitNotJm;
  }
}

int run_measures(const std::string& o1spec, const std::string& o2spec) {
  const qjm::SimpleObservable o1 = load_observable(o1spec);
  nlohmann::json out;
  auto describe = [](const qjm::SimpleObservable& o) {
    nlohmann::json j = qjm::sharpness(o);
    try {
      const auto [dist, axis] = qjm::distance_to_nearest_sharp(o);
      j["nearest_sharp"] = {
          {"distance", dist},
          {"axis", {axis.vec().x, axis.vec().y, axis.vec().z}}};
    } catch (const qjm::DegenerateAxis&) {
      j["nearest_sharp"] = nullptr;
    }
    return j;
  };
  out["o1"] = describe(o1);
  if (!o2spec.empty()) {
    const qjm::SimpleObservable o2 = load_observable(o2spec);
    out["o2"] = describe(o2);
    out["distance"] = qjm::distance(o1, o2);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_boundary(double theta, int grid, const std::string& format,
                 bool verify, int resolution, const qjm::BoundaryOptions& opts) {
  if (grid < 2) fail_usage("--grid must be >= 2");
  qjm::TargetPair target{qjm::UnitVector3::from({1, 0, 0}),
                         qjm::UnitVector3::from({0, 1, 0}), 0.0};
  try {
    target = qjm::TargetPair::from_angle(theta);
  } catch (const qjm::ParamOutOfRange& e) {
    fail_usage(e.what());
  }

  qjm::BoundaryCurve curve{};
  try {
    curve = qjm::boundary_curve(target, grid, opts);
  } catch (const qjm::SolverDidNotConverge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDisagreement;
  }

  if (format == "json") {
    std::cout << nlohmann::json(curve).dump(2) << "\n";
  } else {
    std::cout << qjm::boundary_curve_csv(curve);
  }

  if (verify) {
    for (std::size_t i = 0; i < curve.samples.size(); i += 8) {
      const qjm::BoundarySample& s = curve.samples[i];
      const double oracle =
          qjm::oracle::brute_force_min_d2(target, s.d1, resolution);
      const double excess = oracle - s.d2min;
      if (excess < -1e-6 || excess > 2.0 / resolution) {
        std::cerr << "verify: sample d1=" << s.d1 << " d2min=" << s.d2min
                  << " disagrees with oracle value " << oracle << "\n";
        return kExitDisagreement;
      }
    }
    std::cerr << "verify: all checked samples within oracle tolerance\n";
  }
  return 0;
}

int run_verify(const std::string& o1spec, const std::string& o2spec,
               int resolution, double tol) {
  const qjm::SimpleObservable o1 = load_observable(o1spec);
  const qjm::SimpleObservable o2 = load_observable(o2spec);
  const qjm::JmVerdict solver = qjm::decide_jm(o1, o2, tol);
  const qjm::JmVerdict oracle = qjm::oracle::brute_force_jm(o1, o2, resolution);
  const double band = 3.0 / resolution;
  const bool statuses_equal = solver.status == oracle.status;
  const bool inside_band = std::abs(solver.margin) <= band ||
                           std::abs(oracle.margin) <= band;
  const bool agree = statuses_equal || inside_band;
  nlohmann::json out{{"decide", solver},
                     {"brute_force", oracle},
                     {"band", band},
                     {"agree", agree}};
  std::cout << out.dump(2) << "\n";
  return agree ? 0 : kExitDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint measurability of simple qubit observables"};
  app.require_subcommand(1);

  std::string o1spec, o2spec;
  double tol = 1e-9;

  CLI::App* check = app.add_subcommand(
      "check", "decide joint measurability of two observables");
  check->add_option("--o1", o1spec, "observable JSON or file path")->required();
  check->add_option("--o2", o2spec, "observable JSON or file path")->required();
  check->add_option("--tol", tol, "decision tolerance");

  ConstructArgs cargs;
  CLI::App* construct =
      app.add_subcommand("construct", "build an explicit joint observable");
  construct
      ->add_option("kind", cargs.kind,
                   "jordan|covariant|skewed|symmetrized|product|trivial")
      ->required();
  construct->add_option("--a", cargs.a, "Bloch vector x,y,z");
  construct->add_option("--b", cargs.b, "Bloch vector x,y,z");
  construct->add_option("--u", cargs.u, "symmetry axis x,y,z");
  construct->add_option("--gamma", cargs.gamma, "covariant gamma parameter")
      ->trigger_on_parse()
      ->each([&cargs](const std::string&) { cargs.gamma_set = true; });
  construct->add_option("--p", cargs.p, "covariant p parameter");
  construct->add_option("--t", cargs.t, "skew parameter")
      ->trigger_on_parse()
      ->each([&cargs](const std::string&) { cargs.t_set = true; });
  construct->add_option("--o1", cargs.o1, "observable JSON or file path");
  construct->add_option("--o2", cargs.o2, "observable JSON or file path");

  std::string m1spec, m2spec;
  CLI::App* measures = app.add_subcommand(
      "measures", "sharpness, unsharpness and distances of observables");
  measures->add_option("--o1", m1spec, "observable JSON or file path")
      ->required();
  measures->add_option("--o2", m2spec, "optional second observable");

  double theta = 0.0;
  int grid = 41;
  std::string format = "csv";
  bool verify_flag = false;
  int resolution = 256;
  qjm::BoundaryOptions bopts;
  CLI::App* boundary = app.add_subcommand(
      "boundary", "trace the admissible-region boundary curve");
  boundary->add_option("--theta", theta, "angle between targets, radians")
      ->required();
  boundary->add_option("--grid", grid, "number of d1 samples");
  boundary->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  boundary->add_flag("--verify", verify_flag,
                     "cross-check every 8th sample against the oracle");
  boundary->add_option("--resolution", resolution,
                       "oracle resolution for --verify");
  boundary->add_option("--stage-grid", bopts.grid, "stage-1 solver grid");
  boundary->add_option("--tol", bopts.tol, "solver refinement tolerance");
  boundary->add_option("--jobs", bopts.jobs, "worker threads");
  boundary->add_option("--seed", bopts.seed, "seed for the polish restarts");

  std::string v1spec, v2spec;
  int vresolution = 64;
  double vtol = 1e-9;
  CLI::App* verify = app.add_subcommand(
      "verify", "cross-check decide_jm against the brute-force oracle");
  verify->add_option("--o1", v1spec, "observable JSON or file path")
      ->required();
  verify->add_option("--o2", v2spec, "observable JSON or file path")
      ->required();
  verify->add_option("--resolution", vresolution, "oracle grid resolution");
  verify->add_option("--tol", vtol, "decision tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return run_check(o1spec, o2spec, tol);
    if (construct->parsed()) return run_construct(cargs);
    if (measures->parsed()) return run_measures(m1spec, m2spec);
    if (boundary->parsed()) {
      return run_boundary(theta, grid, format, verify_flag, resolution, bopts);
    }
    if (verify->parsed()) return run_verify(v1spec, v2spec, vresolution, vtol);
  } catch (const qjm::SolverDidNotConverge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDisagreement;
  } catch (const qjm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
