#include "qherm/metrics.hpp"

#include <cmath>
#include <string>

#include "qherm/errors.hpp"
#include "qherm/operators.hpp"

namespace qherm {

Residual qh_residual(const Operator& h, const Operator& theta) {
  return observability_check(h, theta);
}

Residual observability_check(const Operator& a, const Operator& theta) {
  require_same_dim(a, theta);
  return residual_of(a.adjoint() * theta, theta * a, a.norm() * theta.norm());
}

PositivityCertificate positivity_certificate(const Operator& m,
                                             const Tolerances& tol) {
  const Operator herm = accept_hermitian(m, tol);
  Eigen::SelfAdjointEigenSolver<Operator> solver(herm,
                                                  Eigen::EigenvaluesOnly);
  PositivityCertificate cert;
  cert.min_eig = solver.eigenvalues().minCoeff();
  cert.max_eig = solver.eigenvalues().maxCoeff();
  cert.positive = cert.max_eig > 0.0 && cert.min_eig > 1e-12 * cert.max_eig;
  return cert;
}

MetricCandidate certify(const Operator& theta, const Tolerances& tol) {
  MetricCandidate out;
  out.theta = accept_hermitian(theta, tol);
  const auto cert = positivity_certificate(out.theta, tol);
  out.min_eig = cert.min_eig;
  out.max_eig = cert.max_eig;
  out.positive = cert.positive;
  return out;
}

MetricCandidate spectral_metric(const SpectralData& s,
                                std::vector<double> weights,
                                const Tolerances& tol) {
  const auto reality = is_real_spectrum(s, tol.rel);
  if (!reality.real) {
    throw Error(ErrorCode::ComplexSpectrum,
                "spectrum has imaginary parts up to " +
                    std::to_string(reality.max_imag),
                reality.max_imag);
  }
  const auto n = static_cast<std::size_t>(s.size());
  if (weights.empty()) weights.assign(n, 1.0);
  if (weights.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "weight count does not match spectrum size");
  }
  for (double k : weights) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw Error(ErrorCode::NonPositiveWeight,
                  "metric weights must be positive and finite", k);
    }
  }
  const Eigen::Map<const Eigen::VectorXd> kappa(weights.data(),
                                                static_cast<Eigen::Index>(n));
  const Operator theta =
      s.left * kappa.cast<Complex>().asDiagonal() * s.left.adjoint();
  MetricCandidate out = certify(theta, tol);
  out.weights = std::move(weights);
  return out;
}

MetricRoot metric_root(const MetricCandidate& theta) {
  if (!theta.positive) {
    throw Error(ErrorCode::NotPositive, "metric is not positive definite",
                theta.min_eig);
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(theta.theta);
  const Eigen::VectorXd root = solver.eigenvalues().cwiseSqrt();
  const Operator& u = solver.eigenvectors();
  MetricRoot out;
  out.sqrt = u * root.cast<Complex>().asDiagonal() * u.adjoint();
  out.inv_sqrt =
      u * root.cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
  return out;
}

Operator hermitize(const Operator& h, const MetricCandidate& theta) {
  require_operator(h);
  require_same_dim(h, theta.theta);
  const MetricRoot root = metric_root(theta);
  return root.sqrt * h * root.inv_sqrt;
}

}  // namespace qherm
