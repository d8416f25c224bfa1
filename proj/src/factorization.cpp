#include "qherm/factorization.hpp"

#include <cmath>
#include <string>

#include "qherm/errors.hpp"
#include "qherm/operators.hpp"
#include "qherm/spectral.hpp"

namespace qherm {
namespace {

Signature count_signs(const Eigen::VectorXd& eig) {
  const double scale = eig.cwiseAbs().maxCoeff();
  Signature sig;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (std::abs(eig(i)) <= 1e-10 * scale) {
      throw Error(ErrorCode::SingularPseudoMetric,
                  "pseudometric has a (near-)zero eigenvalue", eig(i));
    }
    (eig(i) > 0.0 ? sig.positive : sig.negative) += 1;
  }
  return sig;
}

Eigen::VectorXd hermitian_eigenvalues(const Operator& m) {
  Eigen::SelfAdjointEigenSolver<Operator> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

PseudoMetric::PseudoMetric(const Operator& matrix, const Tolerances& tol)
    : matrix_(accept_hermitian(matrix, tol)) {
  signature_ = count_signs(hermitian_eigenvalues(matrix_));
  inverse_ = matrix_.partialPivLu().inverse();
}

Signature signature(const Operator& p, const Tolerances& tol) {
  return count_signs(hermitian_eigenvalues(accept_hermitian(p, tol)));
}

Residual pt_symmetry_residual(const Operator& h, const PseudoMetric& p) {
  require_same_dim(h, p.matrix());
  return residual_of(h.adjoint() * p.matrix(), p.matrix() * h,
                     h.norm() * p.matrix().norm());
}

Operator charge_from_metric(const Operator& theta, const PseudoMetric& p,
                            const Tolerances& tol) {
  const Operator herm = accept_hermitian(theta, tol);
  require_same_dim(herm, p.matrix());
  return p.matrix().partialPivLu().solve(herm);
}

StandardCharge standard_charge(const Operator& h, const PseudoMetric& p,
                               const Tolerances& tol) {
  require_operator(h, "Hamiltonian");
  const Residual pt = pt_symmetry_residual(h, p);
  if (pt.rel > tol.rel) {
    throw Error(ErrorCode::NotPTSymmetric,
                "H^dag P != P H (relative residual " +
                    std::to_string(pt.rel) + ")",
                pt.rel);
  }
  const SpectralData s = eigendecompose(h);
  const RealityCheck reality = is_real_spectrum(s, tol.rel);
  if (!reality.real) {
    throw Error(ErrorCode::BrokenPhase,
                "spectrum is not real (max |Im| = " +
                    std::to_string(reality.max_imag) + ")",
                reality.max_imag);
  }

  StandardCharge out;
  std::vector<double> kappa;
  for (Eigen::Index n = 0; n < s.size(); ++n) {
    const auto phi = s.left.col(n);
    const Complex c = phi.dot(p.inverse() * phi);
    const double scale = phi.squaredNorm();
    if (std::abs(c) < 1e-10 * scale) {
      throw Error(ErrorCode::ExceptionalPoint,
                  "vanishing P-norm of eigenvector " + std::to_string(n),
                  std::abs(c));
    }
    // P-pseudo-Hermiticity makes c_n real; the imaginary part is roundoff.
    if (std::abs(c.imag()) > 1e-10 * std::abs(c)) {
      throw Error(ErrorCode::NotPTSymmetric,
                  "P-norm of eigenvector " + std::to_string(n) +
                      " is not real",
                  c.imag());
    }
    out.norms.push_back(c.real());
    kappa.push_back(1.0 / std::abs(c.real()));
  }
  out.theta = spectral_metric(s, kappa, tol);
  out.charge = p.inverse() * out.theta.theta;
  return out;
}

std::string to_string(Space s) {
  switch (s) {
    case Space::F: return "F";
    case Space::R: return "R";
    case Space::H: return "H";
  }
  return "?";
}

SpaceTriple::SpaceTriple(PseudoMetric p, Operator charge,
                         const Tolerances& tol)
    : p_(std::move(p)), c_(std::move(charge)), tol_(tol) {
  require_operator(c_, "charge");
  require_same_dim(c_, p_.matrix());
  theta_ = accept_hermitian(p_.matrix() * c_, tol_);
}

Complex triple_inner(const SpaceTriple& t, Space space, const StateVector& v1,
                     const StateVector& v2) {
  switch (space) {
    case Space::F:
      return inner(Operator::Identity(t.theta().rows(), t.theta().cols()),
                   v1, v2);
    case Space::R:
      return inner(t.pseudometric().matrix(), v1, v2);
    case Space::H:
      return inner(t.theta(), v1, v2);
  }
  return {};
}

Operator conjugation_in(const SpaceTriple& t, Space space,
                        const Operator& a) {
  switch (space) {
    case Space::F:
      require_operator(a);
      return adjoint(a);
    case Space::R:
      return adjoint_wrt(a, t.pseudometric().matrix(), t.tolerances());
    case Space::H:
      return adjoint_wrt(a, t.theta(), t.tolerances());
  }
  return a;
}

bool TableReport::all_pass() const {
  for (const auto& r : rows) {
    if (!r.pass) return false;
  }
  return true;
}

std::string TableReport::reading() const {
  if (!theta_positive) return "indefinite";
  return p_definite ? "hilbert" : "krein";
}

TableReport verify_table(const SpaceTriple& t, const Operator& h,
                         double tol) {
  require_same_dim(h, t.theta());
  const Operator& p = t.pseudometric().matrix();
  const Operator& c = t.charge();
  const Operator& theta = t.theta();
  const double nh = h.norm();
  const double nc = c.norm();
  const double np = p.norm();
  const double nt = theta.norm();

  const Operator h_sharp = conjugation_in(t, Space::H, h);
  const Operator h_ddag = conjugation_in(t, Space::R, h);
  const Operator c_ddag = conjugation_in(t, Space::R, c);

  TableReport report;
  auto add = [&](std::string name, Residual r) {
    report.rows.push_back({std::move(name), r.abs, r.rel, r.rel <= tol});
  };
  add("H = H# (in H)", residual_of(h, h_sharp, nh));
  add("H^ddag C = C H (in R)", residual_of(h_ddag * c, c * h, nh * nc));
  add("C = C^ddag (in R)", residual_of(c, c_ddag, nc));
  add("C^dag P = P C (in F)", residual_of(c.adjoint() * p, p * c, nc * np));
  add("P = P^dag (in F)", residual_of(p, p.adjoint(), np));
  add("H^dag Theta = Theta H (in F)",
      residual_of(h.adjoint() * theta, theta * h, nh * nt));

  report.signature = t.pseudometric().signature();
  report.p_definite = t.pseudometric().definite();
  const auto cert = positivity_certificate(theta, t.tolerances());
  report.theta_min_eig = cert.min_eig;
  report.theta_positive = cert.positive;
  report.h_vs_r_adjoint = residual_of(h, h_ddag, nh).rel;
  return report;
}

}  // namespace qherm
