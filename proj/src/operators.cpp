#include "qherm/operators.hpp"

#include <limits>
#include <string>

namespace qherm {

void require_operator(const Operator& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw Error(ErrorCode::InvalidOperator,
                std::string(what) + " must be a nonempty square matrix");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidOperator,
                std::string(what) + " has non-finite entries");
  }
}

void require_same_dim(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator dimensions " + std::to_string(a.rows()) + " and " +
                    std::to_string(b.rows()) + " differ");
  }
}

double frobenius(const Operator& a) { return a.norm(); }

double hermiticity_defect(const Operator& a) {
  const double n = a.norm();
  const double d = (a - a.adjoint()).norm();
  return n > 0.0 ? d / n : d;
}

Operator adjoint(const Operator& a) { return a.adjoint(); }

Operator time_reversal(const Operator& a) { return a.conjugate(); }

Operator accept_hermitian(const Operator& m, const Tolerances& tol) {
  require_operator(m, "metric");
  const double defect = hermiticity_defect(m);
  if (defect > tol.hermiticity) {
    throw Error(ErrorCode::NonHermitianMetric,
                "metric is not Hermitian (relative defect " +
                    std::to_string(defect) + ")",
                defect);
  }
  return (m + m.adjoint()) / 2.0;
}

double condition_number(const Operator& a) {
  Eigen::JacobiSVD<Operator> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

Operator adjoint_wrt(const Operator& a, const Operator& m,
                     const Tolerances& tol) {
  require_operator(a);
  const Operator metric = accept_hermitian(m, tol);
  require_same_dim(a, metric);
  const double cond = condition_number(metric);
  if (!(cond <= tol.condition_cap)) {
    throw Error(ErrorCode::SingularMetric,
                "metric condition number " + std::to_string(cond) +
                    " exceeds cap",
                cond);
  }
  return metric.partialPivLu().solve(a.adjoint() * metric);
}

Complex inner(const Operator& m, const StateVector& v1,
              const StateVector& v2) {
  if (m.rows() != v1.size() || m.cols() != v2.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "inner product operands have mismatched dimensions");
  }
  return v1.dot(m * v2);
}

Operator parity_matrix(int n) {
  if (n < 1) {
    throw Error(ErrorCode::InvalidOperator, "parity dimension must be >= 1");
  }
  return Operator::Identity(n, n).rowwise().reverse();
}

Residual residual_of(const Operator& lhs, const Operator& rhs, double scale) {
  require_same_dim(lhs, rhs);
  Residual r;
  r.abs = (lhs - rhs).norm();
  r.rel = scale > 0.0 ? r.abs / scale : r.abs;
  return r;
}

}  // namespace qherm
