#include "qherm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "qherm/errors.hpp"
#include "qherm/operators.hpp"

namespace qherm {
namespace {

struct RawEigen {
  Eigen::VectorXcd values;
  Operator vectors;
};

RawEigen solve(const Operator& a) {
  Eigen::ComplexEigenSolver<Operator> solver(a, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "complex Schur reduction failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<Eigen::Index> sorted_order(const Eigen::VectorXcd& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     const Complex a = values(i);
                     const Complex b = values(j);
                     if (a.real() != b.real()) return a.real() < b.real();
                     return a.imag() < b.imag();
                   });
  return order;
}

double min_pairwise_gap(const Eigen::VectorXcd& values) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    for (Eigen::Index j = i + 1; j < values.size(); ++j) {
      gap = std::min(gap, std::abs(values(i) - values(j)));
    }
  }
  return gap;
}

}  // namespace

double SpectralData::spectral_radius() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

void biorthonormalize(Operator& right, Operator& left) {
  if (right.rows() != left.rows() || right.cols() != left.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "right and left systems differ in shape");
  }
  for (Eigen::Index n = 0; n < right.cols(); ++n) {
    const double norm = right.col(n).norm();
    if (norm > 0.0) right.col(n) /= norm;
  }
  for (Eigen::Index n = 0; n < right.cols(); ++n) {
    const double scale = left.col(n).norm() * right.col(n).norm();
    const Complex pairing = left.col(n).dot(right.col(n));
    if (!(std::abs(pairing) >= 1e-12 * scale) || scale == 0.0) {
      throw Error(ErrorCode::SelfOrthogonal,
                  "eigenvector " + std::to_string(n) +
                      " is self-orthogonal (exceptional point)",
                  std::abs(pairing));
    }
  }
  const Operator gram = left.adjoint() * right;
  left = left * gram.inverse().adjoint();
}

SpectralData eigendecompose(const Operator& a,
                            std::optional<double> gap_floor) {
  require_operator(a);
  RawEigen raw = solve(a);
  const auto order = sorted_order(raw.values);
  const Eigen::Index n = a.rows();

  SpectralData out;
  out.eigenvalues.resize(n);
  out.right.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = raw.values(order[static_cast<std::size_t>(k)]);
    out.right.col(k) = raw.vectors.col(order[static_cast<std::size_t>(k)]);
  }
  out.min_gap = n > 1 ? min_pairwise_gap(out.eigenvalues) : 0.0;
  const double floor = gap_floor.value_or(1e-8 * out.spectral_radius());
  if (n > 1 && out.min_gap < floor) {
    throw Error(ErrorCode::DegenerateSpectrum,
                "eigenvalue gap " + std::to_string(out.min_gap) +
                    " below floor " + std::to_string(floor),
                out.min_gap);
  }

  for (Eigen::Index k = 0; k < n; ++k) {
    out.right.col(k).normalize();
  }
  if (condition_number(out.right) <= kLeftFromAdjointCondition) {
    out.left = out.right.inverse().adjoint();
  } else {
    // Near an exceptional point: pair each eigenvalue with the closest
    // conjugate eigenvalue of A^dag.
    RawEigen adj = solve(a.adjoint());
    out.left.resize(n, n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex target = std::conj(out.eigenvalues(k));
      Eigen::Index best = -1;
      double best_dist = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double d = std::abs(adj.values(j) - target);
        if (d < best_dist) {
          best_dist = d;
          best = j;
        }
      }
      used[static_cast<std::size_t>(best)] = true;
      out.left.col(k) = adj.vectors.col(best);
    }
  }
  biorthonormalize(out.right, out.left);
  return out;
}

RealityCheck is_real_spectrum(const SpectralData& s, double tol) {
  RealityCheck check;
  check.max_imag =
      s.size() == 0 ? 0.0 : s.eigenvalues.imag().cwiseAbs().maxCoeff();
  check.real = check.max_imag <= tol * std::max(1.0, s.spectral_radius());
  return check;
}

}  // namespace qherm
