#pragma once

#include <array>
#include <string>
#include <vector>

#include "qherm/types.hpp"

namespace qherm {

/// Symmetric uniform grid on [-L, L] with an odd number of points.
/// Points satisfy x_j = -x_{N-1-j} exactly and x_{(N-1)/2} = 0.
struct Grid {
  double half_width = 0.0;
  int points = 0;
  double spacing = 0.0;
  RealSamples x;

  int mirror(int j) const { return points - 1 - j; }
};

/// Throws BadGrid unless L > 0 and N >= 5 is odd.
Grid make_grid(double half_width, int points);

enum class Parity { Even, Odd };

/// Largest violation of f(x_j) = +-f(-x_j), relative to max |f| (absolute
/// when f vanishes).
double parity_defect(const RealSamples& f, Parity parity);

/// (f(x) +- f(-x)) / 2 on the grid.
RealSamples project_parity(const RealSamples& f, Parity parity);

/// w = sigma + i alpha with sigma even, alpha odd, and the integration
/// constant omega.
struct ChargeAnsatz {
  RealSamples sigma;
  RealSamples alpha;
  double omega = 0.0;
};

/// Validates lengths and parities within 1e-12 (ParityViolation).
ChargeAnsatz make_ansatz(const Grid& g, RealSamples sigma, RealSamples alpha,
                         double omega);

/// V = S + L + i Sigma + i Lambda with S, Sigma even and L, Lambda odd.
struct PotentialSplit {
  RealSamples s;
  RealSamples l;
  RealSamples sigma;
  RealSamples lambda;

  ComplexSamples potential() const;
};

/// Validates lengths and parities within 1e-12 (ParityViolation).
PotentialSplit make_split(const Grid& g, RealSamples s, RealSamples l,
                          RealSamples sigma, RealSamples lambda);

/// Second-order central first derivative; one-sided second-order stencils
/// at the two ends. Odd/even symmetry of the input carries over exactly.
RealSamples derivative(const RealSamples& f, const Grid& g);
ComplexSamples derivative(const ComplexSamples& f, const Grid& g);

/// (-1, 0, 1) / 2h with Dirichlet truncation; exactly antisymmetric.
Operator first_difference(const Grid& g);
/// (1, -2, 1) / h^2 with Dirichlet truncation; exactly symmetric.
Operator second_difference(const Grid& g);

/// H = -D2 + diag(V).
Operator discretize_hamiltonian(const Grid& g, const ComplexSamples& v);

/// Lowest `count` eigenvalues of -D2 + V on the interior points, with the
/// grid ends as Dirichlet nodes (psi(+-L) = 0). V must be real.
RealSamples box_eigenvalues(const Grid& g, const RealSamples& v, int count);

/// C = D1 + diag(sigma + i alpha). Parities are not checked here.
Operator discretize_charge(const Grid& g, const RealSamples& sigma,
                           const RealSamples& alpha);

struct ForwardPotential {
  RealSamples s;       // sigma^2 - alpha^2 + omega
  RealSamples lambda;  // 2 sigma alpha
};

ForwardPotential forward_family(const ChargeAnsatz& a);

/// Full potential split compatible with the ansatz: S and Lambda from
/// forward_family plus the odd/even parts forced by the first-order
/// coefficient, L = -sigma' and Sigma = -alpha'.
PotentialSplit required_split(const ChargeAnsatz& a, const Grid& g);

struct OdePairResidual {
  double r1 = 0.0;  // max |S' - 2 sigma' sigma + 2 alpha' alpha|
  double r2 = 0.0;  // max |Lambda' - 2 sigma' alpha - 2 alpha' sigma|
};

/// Max-norm residuals of the ODE pair on interior points.
OdePairResidual ode_pair_residual(const ChargeAnsatz& a, const RealSamples& s,
                                  const RealSamples& lambda, const Grid& g);

/// Pointwise residual functions of the ODE pair (zero at the two ends).
std::array<RealSamples, 2> ode_pair_functions(const ChargeAnsatz& a,
                                              const RealSamples& s,
                                              const RealSamples& lambda,
                                              const Grid& g);

inline constexpr double kSigmaFloor = 1e-6;

/// Recovers (sigma, alpha) from (S, Lambda, omega):
///   2 sigma^2 = (S - omega) + sqrt((S - omega)^2 + Lambda^2),
///   alpha = Lambda / (2 sigma),
/// with sigma = branch * sqrt(sigma^2). Throws SigmaVanishes (detail: x)
/// where |sigma| < kSigmaFloor while Lambda != 0.
ChargeAnsatz inverse_family(const RealSamples& s, const RealSamples& lambda,
                            double omega, const Grid& g, int branch = +1);

/// Rows of H^dag (PC) - (PC) H on interior indices [margin, N-1-margin]:
/// max absolute entry.
inline constexpr int kBoundaryMargin = 2;
double compose_pct_residual(const ChargeAnsatz& a, const PotentialSplit& ps,
                            const Grid& g);

/// Same commutator applied to the Gaussian probe exp(-x^2), max-norm over
/// interior points. Converges with the discretization, unlike the entrywise
/// residual.
double compose_pct_action_residual(const ChargeAnsatz& a,
                                   const PotentialSplit& ps, const Grid& g);

/// Per-order coefficient functions of H^dag (PC) - (PC) H, written as
/// (sum_k c_k D^k) P with parity P moved to the right.
struct CoefficientResiduals {
  std::array<ComplexSamples, 4> order;  // index k multiplies D^k

  double max_abs(int k) const;
};

CoefficientResiduals coefficient_match(const ChargeAnsatz& a,
                                       const PotentialSplit& ps,
                                       const Grid& g);

/// ||PC - (PC)^dag||_F for the discretized charge; raw samples so that
/// parity-violating inputs can be probed.
double charge_pg_hermiticity(const RealSamples& sigma,
                             const RealSamples& alpha, const Grid& g);
double charge_pg_hermiticity(const ChargeAnsatz& a, const Grid& g);

}  // namespace qherm
