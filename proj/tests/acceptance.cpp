// Acceptance suite: one PASS/FAIL line per criterion, exit 1 on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qherm/errors.hpp"
#include "qherm/evolution.hpp"
#include "qherm/factorization.hpp"
#include "qherm/family.hpp"
#include "qherm/metrics.hpp"
#include "qherm/model.hpp"
#include "qherm/operators.hpp"
#include "qherm/scenario.hpp"
#include "qherm/spectral.hpp"
#include "test_util.hpp"

using namespace qherm;
using namespace qherm::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const char* kTwoLevel =
    R"j({"name":"two_level","kind":"matrix","data":[[[0,0.6],[1,0]],[[1,0],[0,-0.6]]],)j"
    R"j("pseudometric":[[0,1],[1,0]]})j";
const char* kBroken =
    R"j({"name":"broken","kind":"matrix","data":[[[0,1.2],[1,0]],[[1,0],[0,-1.2]]]})j";

Complex entry(const nlohmann::json& m, int r, int c) {
  return {m[r][c][0].get<double>(), m[r][c][1].get<double>()};
}

ChargeAnsatz gaussian_ansatz(const Grid& g, double omega) {
  const auto x = g.x.array();
  return make_ansatz(g, (1.0 + 0.5 * (-x.square()).exp()).matrix(),
                     (0.4 * x * (-x.square()).exp()).matrix(), omega);
}

ChargeAnsatz sech_ansatz(const Grid& g, double omega) {
  const auto x = g.x.array();
  const auto sech = 1.0 / x.cosh();
  return make_ansatz(g, (2.0 - 0.3 * sech.square()).matrix(),
                     (0.5 * x.tanh() * sech).matrix(), omega);
}

void ac1(Outcome& o) {
  const auto t0 = Clock::now();
  const ModelSpec spec = parse_model_text(kTwoLevel);
  const Report r = run_scenario(spec, Task::Factorize);
  const auto& c = r.find("charge")->value;
  const Complex expected_c[2][2] = {{{0, 0.75}, {1.25, 0}},
                                    {{1.25, 0}, {0, -0.75}}};
  double c_err = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c_err = std::max(c_err, std::abs(entry(c, i, j) - expected_c[i][j]));
  o.require(c_err <= 1e-12, "C entries");

  const auto& th = r.find("theta")->value;
  const Complex expected_t[2][2] = {{{1.25, 0}, {0, -0.75}},
                                    {{0, 0.75}, {1.25, 0}}};
  double t_err = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      t_err = std::max(t_err, std::abs(entry(th, i, j) - expected_t[i][j]));
  o.require(t_err <= 1e-12, "Theta entries");

  const auto& ev = r.find("theta_eigenvalues")->value;
  o.require(std::abs(ev[0].get<double>() - 0.5) <= 1e-12 &&
                std::abs(ev[1].get<double>() - 2.0) <= 1e-12,
            "Theta eigenvalues");

  const StandardCharge sc =
      standard_charge(spec.hamiltonian, PseudoMetric(*spec.pseudometric));
  const double inv =
      (sc.charge * sc.charge - Operator::Identity(2, 2)).cwiseAbs().maxCoeff();
  o.require(inv <= 1e-12, "C^2 = I");

  const TableReport table = verify_table(
      SpaceTriple(PseudoMetric(*spec.pseudometric), sc.charge),
      spec.hamiltonian, 1e-12);
  double worst = 0.0;
  for (const auto& row : table.rows) worst = std::max(worst, row.rel);
  o.require(table.rows.size() == 6 && worst <= 1e-12, "table residuals");
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime");
  o.note << "max|C-C*|=" << c_err << " |C^2-I|=" << inv
         << " table max=" << worst << " t=" << secs << "s";
}

void ac2(Outcome& o) {
  const auto t0 = Clock::now();
  double worst_qh = 0.0, worst_herm = 0.0, worst_iso = 0.0;
  int distinct = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(1000 + seed);
    const int n = 2 + seed % 11;
    const QuasiHermitian q = random_quasi_hermitian(rng, n);
    const SpectralData s = eigendecompose(q.h);
    const MetricCandidate a = spectral_metric(s);
    std::vector<double> w(n);
    for (auto& x : w) x = rng.uniform(0.2, 5.0);
    const MetricCandidate b = spectral_metric(s, w);

    for (const MetricCandidate* m : {&a, &b}) {
      worst_qh = std::max(worst_qh, qh_residual(q.h, m->theta).rel);
      const Operator h = hermitize(q.h, *m);
      worst_herm = std::max(worst_herm, hermiticity_defect(h) / h.norm());
      Eigen::SelfAdjointEigenSolver<Operator> es((h + h.adjoint()) / 2.0);
      Eigen::VectorXd want = q.eigenvalues;
      std::sort(want.data(), want.data() + n);
      const double scale = want.cwiseAbs().maxCoeff();
      worst_iso = std::max(
          worst_iso, (es.eigenvalues() - want).cwiseAbs().maxCoeff() / scale);
    }
    const bool both_pass = a.positive && b.positive;
    if (both_pass && (a.theta - b.theta).norm() > 1e-6 * a.theta.norm()) {
      ++distinct;
    }
  }
  const double secs = seconds_since(t0);
  o.require(worst_qh <= 1e-10, "quasi-Hermiticity residual");
  o.require(worst_herm <= 1e-10, "hermitized Hermiticity");
  o.require(worst_iso <= 1e-9, "isospectrality");
  o.require(distinct == 100, "non-uniqueness witness");
  o.require(secs < 10.0, "runtime");
  o.note << "qh=" << worst_qh << " herm=" << worst_herm << " iso=" << worst_iso
         << " distinct=" << distinct << "/100 t=" << secs << "s";
}

void ac3(Outcome& o) {
  const auto t0 = Clock::now();
  const auto times = uniform_times(20.0, 200);
  const Operator h = two_level(0.6);
  const StandardCharge sc = standard_charge(h, PseudoMetric(swap2()));
  const Trajectory tr = propagate(h, StateVector::Unit(2, 0), times);
  const auto traces = norm_traces(
      tr, {{"I", Operator::Identity(2, 2)}, {"Theta", sc.theta.theta}});
  const double drift = relative_drift(series(traces, "Theta"));
  const double ratio = max_min_ratio(series(traces, "I"));

  const Trajectory broken = propagate(two_level(1.2), StateVector::Unit(2, 0), times);
  const auto growth = series(
      norm_traces(broken, {{"I", Operator::Identity(2, 2)}}), "I");
  const double rate = log_growth_rate(times, growth, 10.0);
  const double expected = 2.0 * std::sqrt(1.2 * 1.2 - 1.0);
  const double rel = std::abs(rate - expected) / expected;
  const double secs = seconds_since(t0);

  o.require(drift <= 1e-9, "Theta-norm drift");
  o.require(ratio > 1.01, "I-norm ratio");
  o.require(std::abs(expected - 1.32665) <= 1e-5 && rel <= 0.01, "growth rate");
  o.require(secs < 1.0, "runtime");
  o.note << "drift=" << drift << " I-ratio=" << ratio << " rate=" << rate
         << " (rel " << rel << ") t=" << secs << "s";
}

void ac4(Outcome& o) {
  const double l = 1.0;
  std::vector<double> err[3];
  for (int n : {101, 201, 401}) {
    const Grid g = make_grid(l, n);
    const RealSamples ev = box_eigenvalues(g, RealSamples::Zero(n), 3);
    for (int k = 0; k < 3; ++k) {
      const double exact = std::pow((k + 1) * std::numbers::pi / (2.0 * l), 2);
      err[k].push_back(std::abs(ev(k) - exact));
    }
  }
  double lo = 1e300, hi = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int r = 0; r < 2; ++r) {
      const double ratio = err[k][r] / err[k][r + 1];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  o.require(lo >= 3.5 && hi <= 4.5, "refinement ratio");
  o.note << "ratios in [" << lo << ", " << hi << "]";
}

void ac5(Outcome& o) {
  double d32 = 0.0, pg = 0.0;
  std::vector<std::function<ChargeAnsatz(const Grid&)>> ansatze = {
      [](const Grid& g) { return gaussian_ansatz(g, 0.3); },
      [](const Grid& g) { return sech_ansatz(g, -0.5); },
      [](const Grid& g) {
        return make_ansatz(g, RealSamples::Constant(g.points, 1.5),
                           RealSamples::Zero(g.points), 0.25);
      },
  };
  for (const auto& make : ansatze) {
    for (int n : {41, 121, 241, 481}) {
      const Grid g = make_grid(6.0, n);
      const ChargeAnsatz a = make(g);
      for (const PotentialSplit& ps :
           {required_split(a, g),
            make_split(g, forward_family(a).s, RealSamples::Zero(n),
                       RealSamples::Zero(n), forward_family(a).lambda)}) {
        const CoefficientResiduals c = coefficient_match(a, ps, g);
        d32 = std::max({d32, c.max_abs(3), c.max_abs(2)});
      }
      const Operator pc =
          parity_matrix(n) * discretize_charge(g, a.sigma, a.alpha);
      pg = std::max(pg, charge_pg_hermiticity(a, g) / pc.norm());
    }
  }
  o.require(d32 <= 1e-13, "D3/D2 residuals");
  o.require(pg <= 1e-13, "PC Hermiticity");

  double lo = 1e300, hi = 0.0;
  for (const auto& make : {ansatze[0], ansatze[1]}) {
    double prev = 0.0;
    for (int n : {121, 241, 481}) {
      const Grid g = make_grid(6.0, n);
      const ChargeAnsatz a = make(g);
      const ForwardPotential fw = forward_family(a);
      const OdePairResidual r = ode_pair_residual(a, fw.s, fw.lambda, g);
      const double cur = std::max(r.r1, r.r2);
      if (prev > 0.0) {
        lo = std::min(lo, prev / cur);
        hi = std::max(hi, prev / cur);
      }
      prev = cur;
    }
  }
  o.require(lo >= 3.5 && hi <= 4.5, "ODE pair refinement");
  o.note << "D3/D2 max=" << d32 << " pg/||PC|| max=" << pg
         << " ODE ratios in [" << lo << ", " << hi << "]";
}

void ac6(Outcome& o) {
  double worst = 0.0;
  for (double omega : {0.0, 0.3, -1.1, 2.5}) {
    for (int n : {121, 241}) {
      const Grid g = make_grid(6.0, n);
      for (const ChargeAnsatz& a : {gaussian_ansatz(g, omega), sech_ansatz(g, omega)}) {
        const ForwardPotential fw = forward_family(a);
        const ChargeAnsatz back = inverse_family(fw.s, fw.lambda, omega, g, +1);
        for (int j = 0; j < n; ++j) {
          if (std::abs(a.sigma(j)) <= kSigmaFloor) continue;
          worst = std::max({worst, std::abs(back.sigma(j) - a.sigma(j)),
                            std::abs(back.alpha(j) - a.alpha(j))});
        }
      }
    }
  }
  o.require(worst <= 1e-12, "roundtrip");

  const ModelSpec spec = parse_model_text(
      R"j({"name":"g","kind":"family","grid":{"L":6,"N":121},)j"
      R"j("sigma":"1 + 0.5*exp(-x^2)","alpha":"0.4*x*exp(-x^2)","omega":0.3})j");
  const Report r = run_scenario(spec, Task::FamilyInverse);
  const ReportRow* sign = r.find("omega_sign_convention");
  o.require(sign != nullptr && sign->value == "S-omega", "omega sign recorded");
  o.require(r.all_pass(), "family-inverse report");
  o.note << "max roundtrip error=" << worst << " omega sign="
         << (sign ? sign->value.get<std::string>() : "?");
}

void ac7(Outcome& o) {
  for (int n = 2; n <= 9; ++n) {
    const Signature s = signature(parity_matrix(n));
    o.require(s.positive == (n + 1) / 2 && s.negative == n / 2,
              "parity signature N=" + std::to_string(n));
  }
  // Two-level model and a PT-symmetric chain, both with P = parity.
  double min_eig = 1e300;
  bool all_krein = true;
  std::vector<Operator> models{two_level(0.6)};
  const ModelSpec chain = parse_model_text(
      R"j({"kind":"lattice","sites":6,"hopping":1,"gamma":0.3})j");
  models.push_back(chain.hamiltonian);
  for (const Operator& h : models) {
    const PseudoMetric p(parity_matrix(static_cast<int>(h.rows())));
    const StandardCharge sc = standard_charge(h, p);
    all_krein = all_krein && !p.definite() && sc.theta.positive;
    min_eig = std::min(min_eig, sc.theta.min_eig);
    const Operator pc = p.matrix() * sc.charge;
    o.require((pc - sc.theta.theta).norm() <= 1e-10 * pc.norm(), "Theta = PC");
  }
  o.require(all_krein, "positive Theta with indefinite P");
  o.note << "signatures ok for N=2..9, min eig(Theta)=" << min_eig;
}

void ac8(Outcome& o) {
  const Report r = run_scenario(parse_model_text(kBroken), Task::Metric);
  const ReportRow* row = r.find("metric");
  const bool broken = row != nullptr && row->code == "BrokenPhase";
  o.require(broken, "BrokenPhase row");
  o.require(exit_code(r) == 1, "exit code");
  double value = std::nan("");
  if (broken) value = row->value.get<double>();
  o.require(std::abs(value - 0.663325) <= 1e-6 &&
                std::abs(value - std::sqrt(0.44)) <= 1e-9,
            "max|Im|");
  o.note << "code=" << (row ? row->code : "none") << " exit=" << exit_code(r)
         << " max|Im|=" << value;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {"AC1", "2x2 golden benchmark", ac1},
      {"AC2", "randomized quasi-Hermitian suite", ac2},
      {"AC3", "unitarity demonstration", ac3},
      {"AC4", "discretization order", ac4},
      {"AC5", "differential-family algebra", ac5},
      {"AC6", "inverse-map roundtrip", ac6},
      {"AC7", "Krein bookkeeping", ac7},
      {"AC8", "failure-path contract", ac8},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    o.note.precision(6);
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.note.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
