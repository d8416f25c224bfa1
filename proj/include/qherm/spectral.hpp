#pragma once

#include <optional>

#include "qherm/types.hpp"

namespace qherm {

/// Eigenvalues with a biorthonormal right/left eigenvector system.
///
/// Column n of `right` is |psi_n>, column n of `left` is |phi_n> with
/// <phi_m|psi_n> = delta_mn. Eigenvalues are sorted by real part, then
/// imaginary part, then original solver index.
struct SpectralData {
  Eigen::VectorXcd eigenvalues;
  Operator right;
  Operator left;
  double min_gap = 0.0;

  Eigen::Index size() const { return eigenvalues.size(); }
  double spectral_radius() const;
};

struct RealityCheck {
  bool real = false;
  double max_imag = 0.0;
};

/// Threshold above which left vectors come from a separate decomposition of
/// A^dag rather than from inverting the right-vector matrix.
inline constexpr double kLeftFromAdjointCondition = 1e8;

/// General complex eigendecomposition with biorthonormalized eigenvectors.
///
/// `gap_floor` defaults to 1e-8 times the spectral radius. Throws
/// DegenerateSpectrum when two eigenvalues are closer than the floor,
/// NonConvergence when the Schur reduction fails, SelfOrthogonal at an
/// exceptional point.
SpectralData eigendecompose(const Operator& a,
                            std::optional<double> gap_floor = std::nullopt);

/// True iff max |Im lambda| <= tol * max(1, spectral radius).
RealityCheck is_real_spectrum(const SpectralData& s, double tol = 1e-10);

/// Rescales right columns to unit norm and transforms the left system so
/// that left^dag * right = I.
void biorthonormalize(Operator& right, Operator& left);

}  // namespace qherm
