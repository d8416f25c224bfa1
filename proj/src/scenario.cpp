#include "qherm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "qherm/errors.hpp"
#include "qherm/evolution.hpp"
#include "qherm/factorization.hpp"
#include "qherm/metrics.hpp"
#include "qherm/operators.hpp"
#include "qherm/spectral.hpp"

namespace qherm {
namespace {

using nlohmann::json;

class Rows {
 public:
  explicit Rows(Report& report, std::string prefix)
      : report_(report), prefix_(std::move(prefix)) {}

  void info(const std::string& name, json value) {
    report_.rows.push_back({prefix_ + name, std::move(value), true,
                            std::nullopt, {}, {}});
  }
  void check(const std::string& name, json value, bool pass, double tol) {
    report_.rows.push_back(
        {prefix_ + name, std::move(value), pass, tol, {}, {}});
  }
  void error(const std::string& name, const Error& e) {
    json value = e.detail() ? json(*e.detail()) : json(nullptr);
    report_.rows.push_back({prefix_ + name, std::move(value), false,
                            std::nullopt, std::string(to_string(e.code())),
                            e.what()});
  }
  void series(double coord, const std::string& name, double value) {
    report_.series.push_back({coord, name, value});
  }
  Report& report() { return report_; }

 private:
  Report& report_;
  std::string prefix_;
};

json complex_list(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back({v(i).real(), v(i).imag()});
  }
  return out;
}

json real_list(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json residual_json(const Residual& r) { return json{r.abs, r.rel}; }

Operator pseudometric_for(const ModelSpec& spec) {
  return spec.pseudometric
             ? *spec.pseudometric
             : parity_matrix(static_cast<int>(spec.hamiltonian.rows()));
}

void require_unbroken(const SpectralData& s, double tol) {
  const RealityCheck reality = is_real_spectrum(s, tol);
  if (!reality.real) {
    throw Error(ErrorCode::BrokenPhase,
                "spectrum is not real (max |Im| = " +
                    std::to_string(reality.max_imag) + ")",
                reality.max_imag);
  }
}

Eigen::VectorXd sorted_real(const Eigen::VectorXcd& v) {
  Eigen::VectorXd r = v.real();
  std::sort(r.data(), r.data() + r.size());
  return r;
}

double max_abs_entry(const Operator& m) { return m.cwiseAbs().maxCoeff(); }

// --- tasks ---------------------------------------------------------------

void spectrum_task(const ModelSpec& spec, const ScenarioOptions& opt,
                   Rows& rows) {
  const Operator& h = spec.hamiltonian;
  rows.info("dimension", h.rows());
  const SpectralData s = eigendecompose(h);
  rows.info("eigenvalues", complex_list(s.eigenvalues));
  rows.info("min_gap", s.min_gap);
  rows.info("spectral_radius", s.spectral_radius());
  const RealityCheck reality = is_real_spectrum(s, opt.tol);
  rows.check("max_imag", reality.max_imag, reality.real, opt.tol);
  const Eigen::Index n = h.rows();
  const double bio =
      (s.left.adjoint() * s.right - Operator::Identity(n, n)).norm();
  rows.check("biorthonormality", bio, bio <= 1e-10, 1e-10);
  const Operator rebuilt =
      s.right * s.eigenvalues.asDiagonal() * s.left.adjoint();
  const double recon = residual_of(h, rebuilt, h.norm()).rel;
  rows.check("reconstruction", recon, recon <= 1e-9, 1e-9);
}

void metric_task(const ModelSpec& spec, const ScenarioOptions& opt,
                 Rows& rows) {
  const Operator& h = spec.hamiltonian;
  const SpectralData s = eigendecompose(h);
  require_unbroken(s, opt.tol);
  const Tolerances tol{opt.tol};
  const MetricCandidate theta = spectral_metric(s, spec.weights, tol);
  rows.info("theta", matrix_to_json(theta.theta));
  rows.info("weights", theta.weights);
  rows.info("theta_max_eig", theta.max_eig);
  rows.check("theta_min_eig", theta.min_eig, theta.positive, 1e-12);
  const Residual qh = qh_residual(h, theta.theta);
  rows.check("qh_residual", residual_json(qh), qh.rel <= opt.tol, opt.tol);
  const Operator herm = hermitize(h, theta);
  const double defect = hermiticity_defect(herm);
  rows.check("hermitized_hermiticity", defect, defect <= opt.tol, opt.tol);
  Eigen::SelfAdjointEigenSolver<Operator> es((herm + herm.adjoint()) / 2.0,
                                             Eigen::EigenvaluesOnly);
  const double iso = (es.eigenvalues() - sorted_real(s.eigenvalues))
                         .cwiseAbs()
                         .maxCoeff();
  rows.check("isospectrality", iso, iso <= 1e-9, 1e-9);
}

void table_rows(const SpaceTriple& triple, const Operator& h,
                const ScenarioOptions& opt, Rows& rows) {
  const TableReport table = verify_table(triple, h, opt.tol);
  for (const auto& r : table.rows) {
    rows.check(r.relation, json{r.abs, r.rel}, r.pass, opt.tol);
  }
  rows.info("signature",
            json{table.signature.positive, table.signature.negative});
  rows.check("theta_min_eig", table.theta_min_eig, table.theta_positive,
             1e-12);
  rows.info("reading", table.reading());
  rows.info("H_vs_Hddag", table.h_vs_r_adjoint);
}

void factorize_task(const ModelSpec& spec, const ScenarioOptions& opt,
                    Rows& rows) {
  const Operator& h = spec.hamiltonian;
  const Tolerances tol{opt.tol};
  const PseudoMetric p(pseudometric_for(spec), tol);
  const Signature sig = p.signature();
  rows.info("pseudometric_signature", json{sig.positive, sig.negative});
  const Residual pt = pt_symmetry_residual(h, p);
  rows.check("pt_symmetry_residual", residual_json(pt), pt.rel <= opt.tol,
             opt.tol);
  require_unbroken(eigendecompose(h), opt.tol);
  const StandardCharge sc = standard_charge(h, p, tol);
  rows.info("charge", matrix_to_json(sc.charge));
  const Eigen::Index n = h.rows();
  const double inv =
      (sc.charge * sc.charge - Operator::Identity(n, n)).norm();
  rows.check("charge_involution", inv, inv <= opt.tol, opt.tol);
  rows.info("charge_norms", sc.norms);
  rows.info("theta", matrix_to_json(sc.theta.theta));
  Eigen::SelfAdjointEigenSolver<Operator> es(sc.theta.theta,
                                             Eigen::EigenvaluesOnly);
  rows.info("theta_eigenvalues", real_list(es.eigenvalues()));
  rows.check("theta_positive", sc.theta.min_eig, sc.theta.positive, 1e-12);
  const Residual obs = observability_check(sc.charge, sc.theta.theta);
  rows.check("charge_observability", residual_json(obs), obs.rel <= opt.tol,
             opt.tol);
  table_rows(SpaceTriple(p, sc.charge, tol), h, opt, rows);
}

void table_task(const ModelSpec& spec, const ScenarioOptions& opt,
                Rows& rows) {
  const Operator& h = spec.hamiltonian;
  const Tolerances tol{opt.tol};
  const PseudoMetric p(pseudometric_for(spec), tol);
  Operator charge;
  std::string source;
  if (spec.charge) {
    charge = *spec.charge;
    source = "model";
  } else if (pt_symmetry_residual(h, p).rel <= opt.tol) {
    charge = standard_charge(h, p, tol).charge;
    source = "standard";
  } else {
    const SpectralData s = eigendecompose(h);
    require_unbroken(s, opt.tol);
    charge = charge_from_metric(spectral_metric(s, spec.weights, tol).theta,
                                p, tol);
    source = "spectral-metric";
  }
  rows.info("charge_source", source);
  table_rows(SpaceTriple(p, charge, tol), h, opt, rows);
}

StateVector initial_state(const ModelSpec& spec, const ScenarioOptions& opt) {
  const Eigen::Index n = spec.hamiltonian.rows();
  if (opt.psi0) {
    if (opt.psi0->size() != n) {
      throw Error(ErrorCode::SchemaError,
                  "psi0 length differs from the Hamiltonian dimension");
    }
    return *opt.psi0;
  }
  if (opt.psi0_index) {
    if (*opt.psi0_index < 0 || *opt.psi0_index >= n) {
      throw Error(ErrorCode::SchemaError, "psi0 index out of range");
    }
    return StateVector::Unit(n, *opt.psi0_index);
  }
  if (spec.psi0) return *spec.psi0;
  return StateVector::Unit(n, 0);
}

void evolve_task(const ModelSpec& spec, const ScenarioOptions& opt,
                 Rows& rows) {
  const Operator& h = spec.hamiltonian;
  const Eigen::Index n = h.rows();
  const StateVector psi0 = initial_state(spec, opt);
  const auto times = uniform_times(opt.t_max, opt.steps);
  const Trajectory traj = propagate(h, psi0, times);
  const SpectralData s = eigendecompose(h);
  const RealityCheck reality = is_real_spectrum(s, opt.tol);

  std::vector<NamedMetric> metrics{{"I", Operator::Identity(n, n)}};
  std::optional<MetricCandidate> theta;
  if (reality.real) {
    theta = spectral_metric(s, spec.weights, Tolerances{opt.tol});
    metrics.emplace_back("Theta", theta->theta);
  }
  const auto traces = norm_traces(traj, metrics);
  rows.report().coord_name = "t";
  for (const auto& t : traces) rows.series(t.time, t.name, t.value);

  double worst_imag = 0.0;
  for (const auto& t : traces) {
    worst_imag = std::max(worst_imag, std::abs(t.imag) /
                                          std::max(std::abs(t.value), 1e-300));
  }
  rows.check("trace_imag_ratio", worst_imag, worst_imag <= 1e-10, 1e-10);

  const auto identity = series(traces, "I");
  rows.info("phase", reality.real ? "unbroken" : "broken");
  rows.info("identity_norm_max_min_ratio", max_min_ratio(identity));
  if (theta) {
    const double drift = relative_drift(series(traces, "Theta"));
    rows.check("theta_norm_drift", drift, drift <= 1e-9, 1e-9);

    const Operator herm = hermitize(h, *theta);
    const StateVector chi0 = metric_root(*theta).sqrt * psi0;
    const auto herm_traces = norm_traces(
        propagate(herm, chi0, times), {{"I", Operator::Identity(n, n)}});
    const auto a = series(herm_traces, "I");
    const auto b = series(traces, "Theta");
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      diff = std::max(diff, std::abs(a[i] - b[i]) / std::abs(b[0]));
    }
    rows.check("hermitized_picture_agreement", diff, diff <= 1e-9, 1e-9);
  } else {
    const double expected = 2.0 * reality.max_imag;
    const double measured = log_growth_rate(times, identity, opt.t_max / 2);
    rows.info("expected_growth_rate", expected);
    const double rel = std::abs(measured - expected) / expected;
    rows.check("identity_norm_growth_rate", measured, rel <= 0.01, 0.01);
  }
}

double ratio_or_nan(double coarse, double fine) {
  return fine > 0.0 ? coarse / fine : std::nan("");
}

void family_forward_task(const ModelSpec& spec, const ScenarioOptions&,
                         Rows& rows) {
  const FamilySamples fs = sample_family(spec, *spec.grid);
  const ForwardPotential fw = forward_family(fs.ansatz);
  const PotentialSplit forced = required_split(fs.ansatz, fs.grid);
  rows.info("omega", fs.ansatz.omega);
  const double se = parity_defect(fw.s, Parity::Even);
  const double lo = parity_defect(fw.lambda, Parity::Odd);
  rows.check("S_even_defect", se, se <= 1e-12, 1e-12);
  rows.check("Lambda_odd_defect", lo, lo <= 1e-12, 1e-12);
  rows.info("L_forced_max_abs", forced.l.cwiseAbs().maxCoeff());
  rows.info("Sigma_forced_max_abs", forced.sigma.cwiseAbs().maxCoeff());
  const OdePairResidual ode =
      ode_pair_residual(fs.ansatz, fw.s, fw.lambda, fs.grid);
  rows.info("ode_pair_residual", json{ode.r1, ode.r2});
  for (Eigen::Index j = 0; j < fs.grid.x.size(); ++j) {
    const double x = fs.grid.x(j);
    rows.series(x, "S", fw.s(j));
    rows.series(x, "Lambda", fw.lambda(j));
    rows.series(x, "L_comp", forced.l(j));
    rows.series(x, "Sigma", forced.sigma(j));
  }
}

void family_inverse_task(const ModelSpec& spec, const ScenarioOptions&,
                         Rows& rows) {
  const FamilySamples fs = sample_family(spec, *spec.grid);
  const FamilyFunctions& f = *spec.family;
  const bool from_ansatz = !f.s && !f.lambda;
  rows.info("omega_sign_convention", "S-omega");
  rows.info("branch", f.branch);
  const ChargeAnsatz rec = inverse_family(fs.split.s, fs.split.lambda,
                                          f.omega, fs.grid, f.branch);
  rows.info("min_abs_sigma", rec.sigma.cwiseAbs().minCoeff());
  const ForwardPotential again = forward_family(rec);
  const double scale =
      std::max({1.0, fs.split.s.cwiseAbs().maxCoeff(),
                fs.split.lambda.cwiseAbs().maxCoeff()});
  const double fwd =
      std::max((again.s - fs.split.s).cwiseAbs().maxCoeff(),
               (again.lambda - fs.split.lambda).cwiseAbs().maxCoeff());
  rows.check("forward_roundtrip", fwd, fwd <= 1e-12 * scale, 1e-12 * scale);
  if (from_ansatz) {
    const int mid = (fs.grid.points - 1) / 2;
    const double sign =
        (rec.sigma(mid) >= 0.0) == (fs.ansatz.sigma(mid) >= 0.0) ? 1.0 : -1.0;
    double err = 0.0;
    for (Eigen::Index j = 0; j < rec.sigma.size(); ++j) {
      if (std::abs(fs.ansatz.sigma(j)) <= kSigmaFloor) continue;
      err = std::max({err, std::abs(rec.sigma(j) - sign * fs.ansatz.sigma(j)),
                      std::abs(rec.alpha(j) - sign * fs.ansatz.alpha(j))});
    }
    rows.check("ansatz_roundtrip", err, err <= 1e-12, 1e-12);
  }
  for (Eigen::Index j = 0; j < fs.grid.x.size(); ++j) {
    rows.series(fs.grid.x(j), "sigma", rec.sigma(j));
    rows.series(fs.grid.x(j), "alpha", rec.alpha(j));
  }
}

struct FamilyLevel {
  int points = 0;
  double ode_r1 = 0.0;
  double ode_r2 = 0.0;
  double action = 0.0;
  double entrywise = 0.0;
  double exact_scale = 0.0;
  CoefficientResiduals coeff;
  double pg = 0.0;
  double pg_scale = 0.0;
};

FamilyLevel evaluate_level(const FamilySamples& fs) {
  FamilyLevel lv;
  lv.points = fs.grid.points;
  const OdePairResidual ode =
      ode_pair_residual(fs.ansatz, fs.split.s, fs.split.lambda, fs.grid);
  lv.ode_r1 = ode.r1;
  lv.ode_r2 = ode.r2;
  lv.action = compose_pct_action_residual(fs.ansatz, fs.split, fs.grid);
  lv.entrywise = compose_pct_residual(fs.ansatz, fs.split, fs.grid);
  const Operator h = discretize_hamiltonian(fs.grid, fs.split.potential());
  const Operator pc = parity_matrix(fs.grid.points) *
                      discretize_charge(fs.grid, fs.ansatz.sigma,
                                        fs.ansatz.alpha);
  lv.exact_scale = 1e-12 * max_abs_entry(h) * max_abs_entry(pc);
  lv.coeff = coefficient_match(fs.ansatz, fs.split, fs.grid);
  lv.pg = charge_pg_hermiticity(fs.ansatz, fs.grid);
  lv.pg_scale = pc.norm();
  return lv;
}

void family_check_task(const ModelSpec& spec, const ScenarioOptions& opt,
                       Rows& rows) {
  const Grid& base = *spec.grid;
  std::vector<FamilyLevel> levels;
  const FamilySamples fs0 = sample_family(spec, base);
  levels.push_back(evaluate_level(fs0));
  for (int k = 1; k <= opt.refine; ++k) {
    const Grid g = make_grid(base.half_width, (base.points - 1) * (1 << k) + 1);
    levels.push_back(evaluate_level(sample_family(spec, g)));
  }
  const FamilyLevel& lv = levels.front();

  rows.info("omega_sign_convention", "S-omega");
  rows.check("charge_pg_hermiticity", lv.pg, lv.pg <= 1e-13 * lv.pg_scale,
             1e-13 * lv.pg_scale);
  rows.check("coefficient_D3", lv.coeff.max_abs(3),
             lv.coeff.max_abs(3) <= 1e-13, 1e-13);
  rows.check("coefficient_D2", lv.coeff.max_abs(2),
             lv.coeff.max_abs(2) <= 1e-13, 1e-13);
  rows.info("coefficient_D1", lv.coeff.max_abs(1));
  rows.info("coefficient_D0", lv.coeff.max_abs(0));

  const PotentialSplit forced = required_split(fs0.ansatz, base);
  rows.info("L_forced_deviation",
            (fs0.split.l - forced.l).cwiseAbs().maxCoeff());
  rows.info("Sigma_forced_deviation",
            (fs0.split.sigma - forced.sigma).cwiseAbs().maxCoeff());
  rows.info("ode_pair_residual", json{lv.ode_r1, lv.ode_r2});
  rows.info("compose_pct_residual", lv.entrywise);
  rows.info("compose_pct_action_residual", lv.action);

  bool converging = false;
  if (levels.size() > 1) {
    json points = json::array();
    json ode_ratios = json::array();
    json action_ratios = json::array();
    json d0_ratios = json::array();
    for (const auto& l : levels) points.push_back(l.points);
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
      ode_ratios.push_back(
          json{ratio_or_nan(levels[k].ode_r1, levels[k + 1].ode_r1),
               ratio_or_nan(levels[k].ode_r2, levels[k + 1].ode_r2)});
      action_ratios.push_back(
          ratio_or_nan(levels[k].action, levels[k + 1].action));
      d0_ratios.push_back(ratio_or_nan(levels[k].coeff.max_abs(0),
                                       levels[k + 1].coeff.max_abs(0)));
    }
    rows.info("refinement_points", points);
    rows.info("ode_pair_ratios", ode_ratios);
    rows.info("action_residual_ratios", action_ratios);
    rows.info("coefficient_D0_ratios", d0_ratios);
    const double last = ratio_or_nan(levels[levels.size() - 2].action,
                                     levels.back().action);
    converging = last >= 3.5 && last <= 4.5;
  }
  const bool exact = lv.entrywise <= lv.exact_scale;
  const char* verdict =
      exact ? "exact" : converging ? "second-order" : "incompatible";
  rows.check("pct_compatibility", verdict, exact || converging, 1e-12);

  for (Eigen::Index j = 0; j < base.x.size(); ++j) {
    const double x = base.x(j);
    for (int k = 0; k < 2; ++k) {
      const auto& c = lv.coeff.order[static_cast<std::size_t>(k)];
      const std::string name = "D" + std::to_string(k);
      rows.series(x, name + "_re", c(j).real());
      rows.series(x, name + "_im", c(j).imag());
    }
  }
}

using TaskFn = std::function<void(const ModelSpec&, const ScenarioOptions&,
                                  Rows&)>;

TaskFn task_function(Task task) {
  switch (task) {
    case Task::Spectrum: return spectrum_task;
    case Task::Metric: return metric_task;
    case Task::Factorize: return factorize_task;
    case Task::Table: return table_task;
    case Task::Evolve: return evolve_task;
    case Task::FamilyForward: return family_forward_task;
    case Task::FamilyInverse: return family_inverse_task;
    case Task::FamilyCheck: return family_check_task;
    case Task::Full: break;
  }
  return {};
}

bool is_family_task(Task t) {
  return t == Task::FamilyForward || t == Task::FamilyInverse ||
         t == Task::FamilyCheck;
}

void run_one(const ModelSpec& spec, Task task, const ScenarioOptions& opt,
             Rows& rows) {
  try {
    task_function(task)(spec, opt, rows);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    rows.error(std::string(to_string(task)), e);
  }
}

std::string options_key(Task task, const ScenarioOptions& opt) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s|tol=%.17g|t=%.17g|steps=%d|refine=%d",
                std::string(to_string(task)).c_str(), opt.tol, opt.t_max,
                opt.steps, opt.refine);
  std::string key = buf;
  if (opt.psi0_index) key += "|psi0=" + std::to_string(*opt.psi0_index);
  if (opt.psi0) key += "|psi0=" + render_json(complex_list(*opt.psi0));
  return key;
}

}  // namespace

std::string_view to_string(Task task) {
  switch (task) {
    case Task::Spectrum: return "spectrum";
    case Task::Metric: return "metric";
    case Task::Factorize: return "factorize";
    case Task::Table: return "table";
    case Task::Evolve: return "evolve";
    case Task::FamilyForward: return "family-forward";
    case Task::FamilyInverse: return "family-inverse";
    case Task::FamilyCheck: return "family-check";
    case Task::Full: return "report";
  }
  return "?";
}

std::optional<Task> task_from_string(std::string_view name) {
  for (Task t : {Task::Spectrum, Task::Metric, Task::Factorize, Task::Table,
                 Task::Evolve, Task::FamilyForward, Task::FamilyInverse,
                 Task::FamilyCheck, Task::Full}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

Report run_scenario(const ModelSpec& spec, Task task,
                    const ScenarioOptions& options) {
  if (is_family_task(task) && spec.kind != ModelKind::Family) {
    throw Error(ErrorCode::SchemaError,
                std::string(to_string(task)) +
                    " requires a model of kind 'family'");
  }
  Report report;
  report.scenario = spec.name + ":" + std::string(to_string(task));
  report.digest =
      fnv1a_hex(spec.document.dump() + "|" + options_key(task, options));

  if (task != Task::Full) {
    Rows rows(report, "");
    run_one(spec, task, options, rows);
    return report;
  }
  const std::vector<Task> battery =
      spec.kind == ModelKind::Family
          ? std::vector<Task>{Task::FamilyForward, Task::FamilyInverse,
                              Task::FamilyCheck}
          : std::vector<Task>{Task::Spectrum, Task::Metric, Task::Factorize,
                              Task::Table, Task::Evolve};
  for (Task t : battery) {
    Rows rows(report, std::string(to_string(t)) + "/");
    run_one(spec, t, options, rows);
  }
  return report;
}

int exit_code(const Report& report) { return report.all_pass() ? 0 : 1; }

}  // namespace qherm
