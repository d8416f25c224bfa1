#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qherm {

using Complex = std::complex<double>;

/// Dense square operator in the standard coordinate basis.
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealSamples = Eigen::VectorXd;
using ComplexSamples = Eigen::VectorXcd;

struct Tolerances {
  double rel = 1e-10;            // generic relative residual tolerance
  double hermiticity = 1e-12;    // ||M - M^dag||_F <= hermiticity * ||M||_F
  double condition_cap = 1e12;   // metric inversion refused above this
};

/// Absolute and scale-relative size of an operator identity's defect.
struct Residual {
  double abs = 0.0;
  double rel = 0.0;
};

}  // namespace qherm
