#pragma once

#include "qherm/errors.hpp"
#include "qherm/types.hpp"

namespace qherm {

/// Throws InvalidOperator unless `a` is square, nonempty and finite.
void require_operator(const Operator& a, const char* what = "operator");
void require_same_dim(const Operator& a, const Operator& b);

double frobenius(const Operator& a);

/// Relative size of the anti-Hermitian part, ||A - A^dag||_F / ||A||_F.
double hermiticity_defect(const Operator& a);

Operator adjoint(const Operator& a);

/// Entrywise complex conjugation in the working (coordinate) basis.
Operator time_reversal(const Operator& a);

/// Checks Hermiticity within `tol.hermiticity` and returns (M + M^dag)/2.
/// Throws NonHermitianMetric otherwise.
Operator accept_hermitian(const Operator& m, const Tolerances& tol = {});

/// Conjugation with respect to the metric M: M^{-1} A^dag M.
///
/// M must be Hermitian (NonHermitianMetric) and invertible with condition
/// number at most `tol.condition_cap` (SingularMetric). With M = I this is
/// the plain adjoint.
Operator adjoint_wrt(const Operator& a, const Operator& m,
                     const Tolerances& tol = {});

/// v1^dag M v2.
Complex inner(const Operator& m, const StateVector& v1, const StateVector& v2);

/// Index-reversal permutation (anti-diagonal ones).
Operator parity_matrix(int n);

/// ||lhs - rhs||_F together with that norm divided by `scale` (abs when the
/// scale vanishes).
Residual residual_of(const Operator& lhs, const Operator& rhs, double scale);

/// 2-norm condition number via SVD.
double condition_number(const Operator& a);

}  // namespace qherm
