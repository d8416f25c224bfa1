#pragma once

#include <vector>

#include "qherm/spectral.hpp"
#include "qherm/types.hpp"

namespace qherm {

/// A Hermitian metric together with its positivity certificate.
struct MetricCandidate {
  Operator theta;
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool positive = false;
  std::vector<double> weights;  // kappa_n; empty unless built spectrally
};

struct PositivityCertificate {
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool positive = false;
};

/// ||H^dag Theta - Theta H||_F, relative to ||H||_F ||Theta||_F.
Residual qh_residual(const Operator& h, const Operator& theta);

/// Theta = sum_n kappa_n |phi_n><phi_n| from the left eigenvectors.
///
/// Requires a real spectrum (ComplexSpectrum) and strictly positive weights
/// (NonPositiveWeight). Empty `weights` means all ones.
MetricCandidate spectral_metric(const SpectralData& s,
                                std::vector<double> weights = {},
                                const Tolerances& tol = {});

/// Hermitian eigenvalue bounds; positive iff min_eig > 1e-12 * max_eig.
PositivityCertificate positivity_certificate(const Operator& m,
                                             const Tolerances& tol = {});

/// Wraps an arbitrary Hermitian matrix as a certified candidate.
MetricCandidate certify(const Operator& theta, const Tolerances& tol = {});

/// Positive Hermitian square root and its inverse, via eigendecomposition.
struct MetricRoot {
  Operator sqrt;
  Operator inv_sqrt;
};
MetricRoot metric_root(const MetricCandidate& theta);

/// h = Theta^{1/2} H Theta^{-1/2}; throws NotPositive unless certified.
Operator hermitize(const Operator& h, const MetricCandidate& theta);

/// Residual of A^dag Theta - Theta A (observability of A in the metric).
Residual observability_check(const Operator& a, const Operator& theta);

}  // namespace qherm
