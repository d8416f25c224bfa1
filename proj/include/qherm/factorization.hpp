#pragma once

#include <string>
#include <vector>

#include "qherm/metrics.hpp"
#include "qherm/types.hpp"

namespace qherm {

struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Hermitian invertible, possibly indefinite metric of R relative to F.
class PseudoMetric {
 public:
  /// Validates Hermiticity and that no eigenvalue lies within
  /// 1e-10 * max|eig| of zero (SingularPseudoMetric).
  explicit PseudoMetric(const Operator& matrix, const Tolerances& tol = {});

  const Operator& matrix() const { return matrix_; }
  const Operator& inverse() const { return inverse_; }
  Signature signature() const { return signature_; }
  bool definite() const { return signature_.negative == 0; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  Operator matrix_;
  Operator inverse_;
  Signature signature_;
};

Signature signature(const Operator& p, const Tolerances& tol = {});

/// Residual of H^dag P - P H.
Residual pt_symmetry_residual(const Operator& h, const PseudoMetric& p);

/// C = P^{-1} Theta (generalized charge; no involution requirement).
Operator charge_from_metric(const Operator& theta, const PseudoMetric& p,
                            const Tolerances& tol = {});

struct StandardCharge {
  Operator charge;
  MetricCandidate theta;
  std::vector<double> norms;  // c_n = <phi_n|P^{-1}|phi_n>
};

/// Conventional charge with C^2 = I and positive Theta = P C.
///
/// Throws NotPTSymmetric, BrokenPhase (detail: max |Im lambda|) or
/// ExceptionalPoint.
StandardCharge standard_charge(const Operator& h, const PseudoMetric& p,
                               const Tolerances& tol = {});

enum class Space { F, R, H };

std::string to_string(Space s);

/// The [H, R, F] bookkeeping: Theta = P C.
class SpaceTriple {
 public:
  SpaceTriple(PseudoMetric p, Operator charge, const Tolerances& tol = {});

  const PseudoMetric& pseudometric() const { return p_; }
  const Operator& charge() const { return c_; }
  const Operator& theta() const { return theta_; }
  const Tolerances& tolerances() const { return tol_; }

 private:
  PseudoMetric p_;
  Operator c_;
  Operator theta_;
  Tolerances tol_;
};

Complex triple_inner(const SpaceTriple& t, Space space, const StateVector& v1,
                     const StateVector& v2);

/// F: A^dag, R: P^{-1} A^dag P, H: Theta^{-1} A^dag Theta.
Operator conjugation_in(const SpaceTriple& t, Space space, const Operator& a);

struct TableRow {
  std::string relation;
  double abs = 0.0;
  double rel = 0.0;
  bool pass = false;
};

struct TableReport {
  std::vector<TableRow> rows;  // fixed order, see verify_table
  Signature signature;
  double theta_min_eig = 0.0;
  bool theta_positive = false;
  bool p_definite = false;
  double h_vs_r_adjoint = 0.0;  // ||H - H^ddag||_F / ||H||_F

  bool all_pass() const;
  /// "hilbert" (P and Theta positive), "krein" (P indefinite, Theta
  /// positive) or "indefinite" (Theta not positive).
  std::string reading() const;
};

/// Residual rows, top to bottom:
///   H = H#  (in H)
///   H^ddag C = C H  (in R)
///   C = C^ddag  (in R)
///   C^dag P = P C  (in F)
///   P = P^dag  (in F)
///   H^dag Theta = Theta H  (in F)
TableReport verify_table(const SpaceTriple& t, const Operator& h,
                         double tol = 1e-10);

}  // namespace qherm
