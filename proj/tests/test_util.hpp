#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qherm/types.hpp"

namespace qherm::testing {

using namespace std::complex_literals;

/// [[i a, 1], [1, -i a]]: real spectrum +-sqrt(1 - a^2) for |a| < 1.
inline Operator two_level(double a) {
  Operator h(2, 2);
  h << Complex(0, a), 1.0, 1.0, Complex(0, -a);
  return h;
}

inline Operator swap2() {
  Operator p(2, 2);
  p << 0.0, 1.0, 1.0, 0.0;
  return p;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  Complex gauss() {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(gen_), n(gen_)};
  }
  Operator matrix(int n) {
    Operator m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = gauss();
    return m;
  }
  StateVector vector(int n) {
    StateVector v(n);
    for (int i = 0; i < n; ++i) v(i) = gauss();
    return v;
  }
  Operator unitary(int n) {
    Eigen::HouseholderQR<Operator> qr(matrix(n));
    return qr.householderQ();
  }
  /// Hermitian positive definite with eigenvalues in [lo, hi].
  Operator positive(int n, double lo = 0.5, double hi = 3.0) {
    const Operator u = unitary(n);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = uniform(lo, hi);
    return u * d.cast<Complex>().asDiagonal() * u.adjoint();
  }
  /// Random V with singular values in [1, max_cond] (so cond(V) <= max_cond).
  Operator conditioned(int n, double max_cond) {
    Eigen::VectorXd s(n);
    s(0) = 1.0;
    for (int i = 1; i < n; ++i)
      s(i) = std::exp(uniform(0.0, std::log(max_cond)));
    return unitary(n) * s.cast<Complex>().asDiagonal() * unitary(n);
  }
  /// Real eigenvalues with pairwise gap >= 0.2.
  Eigen::VectorXd spread_reals(int n) {
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = i + uniform(-0.4, 0.4);
    return d;
  }

 private:
  std::mt19937_64 gen_;
};

struct QuasiHermitian {
  Operator h;
  Operator v;
  Eigen::VectorXd eigenvalues;
};

/// H = V diag(real) V^{-1} with cond(V) <= 100.
inline QuasiHermitian random_quasi_hermitian(Rng& rng, int n) {
  QuasiHermitian q;
  q.v = rng.conditioned(n, 100.0);
  q.eigenvalues = rng.spread_reals(n);
  q.h = q.v * q.eigenvalues.cast<Complex>().asDiagonal() * q.v.inverse();
  return q;
}

inline double max_abs(const Operator& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qherm::testing
