// qherm: command-line front end for metric construction, factorization
// checks, evolution traces and the first-order-charge differential family.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qherm/errors.hpp"
#include "qherm/model.hpp"
#include "qherm/scenario.hpp"

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitInternal = 3;

struct CommonArgs {
  std::string model;
  double tol = 1e-10;
  std::string out;
  std::string format = "json";
  bool symmetrize = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--model", args.model, "Model file (JSON)")->required();
  sub->add_option("--tol", args.tol, "Relative tolerance")
      ->default_val(1e-10);
  sub->add_option("--out", args.out, "Output path (default stdout)");
  sub->add_option("--format", args.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_val("json");
  sub->add_flag("--symmetrize", args.symmetrize,
                "Project parity-tagged functions instead of rejecting them");
}

// --psi0 takes either a basis index or a JSON file holding [[re, im], ...].
void apply_psi0(const std::string& value, qherm::ScenarioOptions& opt) {
  if (value.empty()) return;
  char* end = nullptr;
  const long idx = std::strtol(value.c_str(), &end, 10);
  if (end && *end == '\0') {
    opt.psi0_index = static_cast<int>(idx);
    return;
  }
  std::ifstream in(value);
  if (!in) {
    throw qherm::Error(qherm::ErrorCode::SchemaError,
                       "cannot open psi0 file " + value);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw qherm::Error(qherm::ErrorCode::SchemaError,
                       std::string("malformed psi0 file: ") + e.what());
  }
  if (!j.is_array() || j.empty()) {
    throw qherm::Error(qherm::ErrorCode::SchemaError,
                       "psi0 file must hold a nonempty array");
  }
  qherm::StateVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (e.is_number()) {
      v(static_cast<Eigen::Index>(i)) = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
               e[1].is_number()) {
      v(static_cast<Eigen::Index>(i)) = {e[0].get<double>(),
                                         e[1].get<double>()};
    } else {
      throw qherm::Error(qherm::ErrorCode::SchemaError,
                         "psi0 entries must be numbers or [re, im]");
    }
  }
  opt.psi0 = v;
}

int emit(const qherm::Report& report, const CommonArgs& args) {
  const std::string text =
      args.format == "csv" ? qherm::to_csv(report) : qherm::to_json(report);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "error: cannot write " << args.out << "\n";
      return kExitInternal;
    }
  }
  return qherm::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric operators, pseudometric x charge factorization and "
               "the first-order-charge differential family"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qherm::kVersion);

  CommonArgs args;
  qherm::ScenarioOptions opt;
  std::string psi0;
  qherm::Task task = qherm::Task::Spectrum;

  auto simple = [&](const char* name, const char* help, qherm::Task t) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, args);
    sub->callback([&task, t] { task = t; });
    return sub;
  };
  simple("spectrum", "Eigenvalues, reality and biorthonormality",
         qherm::Task::Spectrum);
  simple("metric", "Spectral metric, certificate and hermitization",
         qherm::Task::Metric);
  simple("factorize", "Standard charge and Theta = P C",
         qherm::Task::Factorize);
  simple("table", "Three-space relation table", qherm::Task::Table);
  auto* evolve = simple("evolve", "Norm traces along exp(-iHt)",
                        qherm::Task::Evolve);
  evolve->add_option("--t-max", opt.t_max, "Final time")->default_val(20.0);
  evolve->add_option("--steps", opt.steps, "Number of time samples")
      ->default_val(200)
      ->check(CLI::Range(2, 1000000));
  evolve->add_option("--psi0", psi0, "Initial state: basis index or file");
  simple("report", "Every applicable task in one report", qherm::Task::Full);

  auto* family = app.add_subcommand("family", "First-order-charge family");
  family->require_subcommand(1);
  auto family_sub = [&](const char* name, const char* help, qherm::Task t) {
    auto* sub = family->add_subcommand(name, help);
    add_common(sub, args);
    sub->callback([&task, t] { task = t; });
    return sub;
  };
  family_sub("forward", "Potential (S, Lambda) from the charge ansatz",
             qherm::Task::FamilyForward);
  family_sub("inverse", "Charge ansatz from (S, Lambda, omega)",
             qherm::Task::FamilyInverse);
  auto* check = family_sub("check", "Compatibility of H and C under PCT",
                           qherm::Task::FamilyCheck);
  check->add_option("--refine", opt.refine, "Refinement levels h -> h/2")
      ->default_val(2)
      ->check(CLI::Range(0, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  }

  try {
    opt.tol = args.tol;
    apply_psi0(psi0, opt);
    const qherm::ModelSpec spec = qherm::load_model(args.model, args.symmetrize);
    for (const auto& w : spec.warnings) std::cerr << "warning: " << w << "\n";
    const qherm::Report report = qherm::run_scenario(spec, task, opt);
    return emit(report, args);
  } catch (const qherm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case qherm::ErrorCode::SchemaError:
      case qherm::ErrorCode::ParseError:
      case qherm::ErrorCode::EvalError:
      case qherm::ErrorCode::ParityViolation:
        return kExitSchema;
      default:
        return kExitInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
