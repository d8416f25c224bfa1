#include "qherm/family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qherm/errors.hpp"
#include "qherm/operators.hpp"

namespace qherm {
namespace {

void require_length(const Grid& g, Eigen::Index n, const char* what) {
  if (n != g.points) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " has " + std::to_string(n) +
                    " samples, grid has " + std::to_string(g.points));
  }
}

void require_parity(const RealSamples& f, Parity parity, const char* what) {
  const double defect = parity_defect(f, parity);
  if (defect > 1e-12) {
    throw Error(ErrorCode::ParityViolation,
                std::string(what) + " is not " +
                    (parity == Parity::Even ? "even" : "odd"),
                defect);
  }
}

template <typename Samples>
Samples derivative_impl(const Samples& f, const Grid& g) {
  const Eigen::Index n = f.size();
  require_length(g, n, "derivative input");
  const double h2 = 2.0 * g.spacing;
  Samples d(n);
  for (Eigen::Index j = 1; j + 1 < n; ++j) {
    d(j) = (f(j + 1) - f(j - 1)) / h2;
  }
  d(0) = ((-3.0 * f(0) + 4.0 * f(1)) - f(2)) / h2;
  d(n - 1) = ((3.0 * f(n - 1) - 4.0 * f(n - 2)) + f(n - 3)) / h2;
  return d;
}

ComplexSamples reflect(const ComplexSamples& f) { return f.reverse(); }

// Differential operator sum_k coeff[k] D^k with sampled coefficients.
struct DiffOp {
  std::vector<ComplexSamples> coeff;

  int order() const { return static_cast<int>(coeff.size()) - 1; }
};

ComplexSamples nth_derivative(ComplexSamples f, int k, const Grid& g) {
  for (int i = 0; i < k; ++i) f = derivative(f, g);
  return f;
}

double binomial(int m, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (m - k + i) / i;
  return b;
}

// (a D^m) o (b D^n) = a sum_k C(m,k) b^(k) D^(m-k+n)
DiffOp compose(const DiffOp& a, const DiffOp& b, const Grid& g) {
  const Eigen::Index n = g.points;
  DiffOp out;
  out.coeff.assign(static_cast<std::size_t>(a.order() + b.order() + 1),
                   ComplexSamples::Zero(n));
  for (int m = 0; m <= a.order(); ++m) {
    for (int q = 0; q <= b.order(); ++q) {
      for (int k = 0; k <= m; ++k) {
        const ComplexSamples bk = nth_derivative(b.coeff[q], k, g);
        out.coeff[static_cast<std::size_t>(m - k + q)] +=
            (binomial(m, k) * a.coeff[m].array() * bk.array()).matrix();
      }
    }
  }
  return out;
}

// Formal L2 adjoint: (a D^m)^dag = (-1)^m D^m o conj(a).
DiffOp formal_adjoint(const DiffOp& a, const Grid& g) {
  const Eigen::Index n = g.points;
  DiffOp out;
  out.coeff.assign(a.coeff.size(), ComplexSamples::Zero(n));
  for (int m = 0; m <= a.order(); ++m) {
    DiffOp dm;
    dm.coeff.assign(static_cast<std::size_t>(m + 1), ComplexSamples::Zero(n));
    dm.coeff[m].setConstant(m % 2 == 0 ? 1.0 : -1.0);
    DiffOp conj_a;
    conj_a.coeff = {a.coeff[m].conjugate()};
    const DiffOp term = compose(dm, conj_a, g);
    for (int k = 0; k <= term.order(); ++k) out.coeff[k] += term.coeff[k];
  }
  return out;
}

// P (a D^m) P = (-1)^m a(-x) D^m.
DiffOp parity_conjugate(const DiffOp& a) {
  DiffOp out;
  for (int m = 0; m <= a.order(); ++m) {
    ComplexSamples c = reflect(a.coeff[m]);
    if (m % 2 == 1) c = -c;
    out.coeff.push_back(std::move(c));
  }
  return out;
}

Operator pct_commutator(const ChargeAnsatz& a, const PotentialSplit& ps,
                        const Grid& g) {
  require_length(g, a.sigma.size(), "sigma");
  require_length(g, ps.s.size(), "potential");
  const Operator h = discretize_hamiltonian(g, ps.potential());
  const Operator pc = parity_matrix(g.points) *
                      discretize_charge(g, a.sigma, a.alpha);
  return h.adjoint() * pc - pc * h;
}

}  // namespace

Grid make_grid(double half_width, int points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error(ErrorCode::BadGrid, "half-width must be positive");
  }
  if (points < 5 || points % 2 == 0) {
    throw Error(ErrorCode::BadGrid, "point count must be odd and >= 5");
  }
  Grid g;
  g.half_width = half_width;
  g.points = points;
  g.spacing = 2.0 * half_width / (points - 1);
  g.x.resize(points);
  const int mid = (points - 1) / 2;
  for (int j = 0; j < mid; ++j) {
    g.x(j) = -half_width + j * g.spacing;
    g.x(points - 1 - j) = -g.x(j);
  }
  g.x(mid) = 0.0;
  return g;
}

double parity_defect(const RealSamples& f, Parity parity) {
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  const double defect = (f - sign * f.reverse()).cwiseAbs().maxCoeff();
  const double scale = f.cwiseAbs().maxCoeff();
  return scale > 0.0 ? defect / scale : defect;
}

RealSamples project_parity(const RealSamples& f, Parity parity) {
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  return (f + sign * f.reverse()) / 2.0;
}

ChargeAnsatz make_ansatz(const Grid& g, RealSamples sigma, RealSamples alpha,
                         double omega) {
  require_length(g, sigma.size(), "sigma");
  require_length(g, alpha.size(), "alpha");
  if (!sigma.allFinite() || !alpha.allFinite() || !std::isfinite(omega)) {
    throw Error(ErrorCode::InvalidOperator, "ansatz has non-finite samples");
  }
  require_parity(sigma, Parity::Even, "sigma");
  require_parity(alpha, Parity::Odd, "alpha");
  return {std::move(sigma), std::move(alpha), omega};
}

ComplexSamples PotentialSplit::potential() const {
  ComplexSamples v(s.size());
  v.real() = s + l;
  v.imag() = sigma + lambda;
  return v;
}

PotentialSplit make_split(const Grid& g, RealSamples s, RealSamples l,
                          RealSamples sigma, RealSamples lambda) {
  require_length(g, s.size(), "S");
  require_length(g, l.size(), "L");
  require_length(g, sigma.size(), "Sigma");
  require_length(g, lambda.size(), "Lambda");
  require_parity(s, Parity::Even, "S");
  require_parity(l, Parity::Odd, "L");
  require_parity(sigma, Parity::Even, "Sigma");
  require_parity(lambda, Parity::Odd, "Lambda");
  return {std::move(s), std::move(l), std::move(sigma), std::move(lambda)};
}

RealSamples derivative(const RealSamples& f, const Grid& g) {
  return derivative_impl(f, g);
}

ComplexSamples derivative(const ComplexSamples& f, const Grid& g) {
  return derivative_impl(f, g);
}

Operator first_difference(const Grid& g) {
  const int n = g.points;
  Operator d = Operator::Zero(n, n);
  const double c = 1.0 / (2.0 * g.spacing);
  for (int j = 0; j + 1 < n; ++j) {
    d(j, j + 1) = c;
    d(j + 1, j) = -c;
  }
  return d;
}

Operator second_difference(const Grid& g) {
  const int n = g.points;
  Operator d = Operator::Zero(n, n);
  const double c = 1.0 / (g.spacing * g.spacing);
  for (int j = 0; j < n; ++j) {
    d(j, j) = -2.0 * c;
    if (j + 1 < n) {
      d(j, j + 1) = c;
      d(j + 1, j) = c;
    }
  }
  return d;
}

Operator discretize_hamiltonian(const Grid& g, const ComplexSamples& v) {
  require_length(g, v.size(), "potential");
  if (!v.allFinite()) {
    throw Error(ErrorCode::InvalidOperator, "potential has non-finite samples");
  }
  Operator h = -second_difference(g);
  h.diagonal() += v;
  return h;
}

RealSamples box_eigenvalues(const Grid& g, const RealSamples& v, int count) {
  require_length(g, v.size(), "V");
  const int m = g.points - 2;
  if (count < 1 || count > m) {
    throw Error(ErrorCode::BadGrid, "eigenvalue count out of range");
  }
  const double inv_h2 = 1.0 / (g.spacing * g.spacing);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    h(i, i) = 2.0 * inv_h2 + v(i + 1);
    if (i + 1 < m) h(i, i + 1) = h(i + 1, i) = -inv_h2;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().head(count);
}

Operator discretize_charge(const Grid& g, const RealSamples& sigma,
                           const RealSamples& alpha) {
  require_length(g, sigma.size(), "sigma");
  require_length(g, alpha.size(), "alpha");
  Operator c = first_difference(g);
  c.diagonal().real() += sigma;
  c.diagonal().imag() += alpha;
  return c;
}

ForwardPotential forward_family(const ChargeAnsatz& a) {
  ForwardPotential out;
  out.s = (a.sigma.array().square() - a.alpha.array().square() + a.omega)
              .matrix();
  out.lambda = (2.0 * a.sigma.array() * a.alpha.array()).matrix();
  return out;
}

PotentialSplit required_split(const ChargeAnsatz& a, const Grid& g) {
  ForwardPotential fw = forward_family(a);
  return make_split(g, std::move(fw.s), -derivative(a.sigma, g),
                    -derivative(a.alpha, g), std::move(fw.lambda));
}

std::array<RealSamples, 2> ode_pair_functions(const ChargeAnsatz& a,
                                              const RealSamples& s,
                                              const RealSamples& lambda,
                                              const Grid& g) {
  require_length(g, s.size(), "S");
  require_length(g, lambda.size(), "Lambda");
  const RealSamples ds = derivative(s, g);
  const RealSamples dl = derivative(lambda, g);
  const RealSamples dsig = derivative(a.sigma, g);
  const RealSamples dalp = derivative(a.alpha, g);
  const auto sig = a.sigma.array();
  const auto alp = a.alpha.array();
  RealSamples r1 = (ds.array() - 2.0 * dsig.array() * sig +
                    2.0 * dalp.array() * alp)
                       .matrix();
  RealSamples r2 = (dl.array() - 2.0 * dsig.array() * alp -
                    2.0 * dalp.array() * sig)
                       .matrix();
  const Eigen::Index n = s.size();
  r1(0) = r1(n - 1) = 0.0;
  r2(0) = r2(n - 1) = 0.0;
  return {std::move(r1), std::move(r2)};
}

OdePairResidual ode_pair_residual(const ChargeAnsatz& a, const RealSamples& s,
                                  const RealSamples& lambda, const Grid& g) {
  const auto f = ode_pair_functions(a, s, lambda, g);
  return {f[0].cwiseAbs().maxCoeff(), f[1].cwiseAbs().maxCoeff()};
}

ChargeAnsatz inverse_family(const RealSamples& s, const RealSamples& lambda,
                            double omega, const Grid& g, int branch) {
  require_length(g, s.size(), "S");
  require_length(g, lambda.size(), "Lambda");
  if (branch != 1 && branch != -1) {
    throw Error(ErrorCode::InvalidOperator, "branch must be +1 or -1");
  }
  const Eigen::Index n = s.size();
  RealSamples sigma(n);
  RealSamples alpha(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double d = s(j) - omega;
    const double lam = lambda(j);
    const double r = std::hypot(d, lam);
    // Both forms equal (d + r) / 2; pick the one without cancellation.
    const double u = d >= 0.0 ? 0.5 * (d + r)
                     : (r - d) > 0.0 ? 0.5 * lam * lam / (r - d)
                                     : 0.0;
    const double sg = branch * std::sqrt(u);
    sigma(j) = sg;
    if (std::abs(sg) < kSigmaFloor) {
      if (lam != 0.0) {
        throw Error(ErrorCode::SigmaVanishes,
                    "sigma vanishes where Lambda != 0 at x = " +
                        std::to_string(g.x(j)),
                    g.x(j));
      }
      alpha(j) = 0.0;
    } else {
      alpha(j) = lam / (2.0 * sg);
    }
  }
  return make_ansatz(g, std::move(sigma), std::move(alpha), omega);
}

double compose_pct_residual(const ChargeAnsatz& a, const PotentialSplit& ps,
                            const Grid& g) {
  const Operator r = pct_commutator(a, ps, g);
  const int rows = g.points - 2 * kBoundaryMargin;
  return r.middleRows(kBoundaryMargin, rows).cwiseAbs().maxCoeff();
}

double compose_pct_action_residual(const ChargeAnsatz& a,
                                   const PotentialSplit& ps, const Grid& g) {
  const Operator r = pct_commutator(a, ps, g);
  const StateVector probe =
      (-g.x.array().square()).exp().matrix().cast<Complex>();
  const StateVector out = r * probe;
  const int rows = g.points - 2 * kBoundaryMargin;
  return out.segment(kBoundaryMargin, rows).cwiseAbs().maxCoeff();
}

double CoefficientResiduals::max_abs(int k) const {
  return order[static_cast<std::size_t>(k)].cwiseAbs().maxCoeff();
}

CoefficientResiduals coefficient_match(const ChargeAnsatz& a,
                                       const PotentialSplit& ps,
                                       const Grid& g) {
  require_length(g, a.sigma.size(), "sigma");
  require_length(g, ps.s.size(), "potential");
  const Eigen::Index n = g.points;

  DiffOp h;
  h.coeff = {ps.potential(), ComplexSamples::Zero(n),
             ComplexSamples::Constant(n, -1.0)};
  DiffOp c;
  ComplexSamples w(n);
  w.real() = a.sigma;
  w.imag() = a.alpha;
  c.coeff = {w, ComplexSamples::Constant(n, 1.0)};

  // PC = Q P and P H = H~ P, with Q = P C P and H~ = P H P.
  const DiffOp q = parity_conjugate(c);
  const DiffOp lhs = compose(formal_adjoint(h, g), q, g);
  const DiffOp rhs = compose(q, parity_conjugate(h), g);

  CoefficientResiduals out;
  for (int k = 0; k < 4; ++k) {
    out.order[static_cast<std::size_t>(k)] =
        lhs.coeff[static_cast<std::size_t>(k)] -
        rhs.coeff[static_cast<std::size_t>(k)];
  }
  return out;
}

double charge_pg_hermiticity(const RealSamples& sigma,
                             const RealSamples& alpha, const Grid& g) {
  const Operator pc =
      parity_matrix(g.points) * discretize_charge(g, sigma, alpha);
  return (pc - pc.adjoint()).norm();
}

double charge_pg_hermiticity(const ChargeAnsatz& a, const Grid& g) {
  return charge_pg_hermiticity(a.sigma, a.alpha, g);
}

}  // namespace qherm
