#pragma once

#include <Eigen/Dense>

#include <array>

#include "qcournot/entangle.hpp"

// Two-mode Gaussian phase-space engine. Everything here works on means and
// covariances in the quadrature ordering R = (X1, P1, X2, P2) with
// X = (a^dag + a)/sqrt(2), P = i(a^dag - a)/sqrt(2) and hbar = 1, so the
// vacuum has zero mean and covariance (1/2) * I. Unitaries act through
// their symplectic matrices M defined by U^dag R U = M R.
namespace qcournot::gaussian {

inline constexpr double kVacuumVariance = 0.5;

// Omega = diag([[0, 1], [-1, 0]], [[0, 1], [-1, 0]]) in the (X1, P1, X2, P2)
// ordering. Canonical commutators read [R_a, R_b] = i * Omega_ab.
Eigen::Matrix4d symplectic_form();

// A 4x4 matrix M with M^T Omega M = Omega. The class guarantees the
// property holds for every instance it hands out.
class SymplecticTransform {
 public:
  static SymplecticTransform identity();

  // Accepts any matrix satisfying the symplectic condition; the residual
  // tolerance scales with the squared magnitude of the entries so that
  // strongly squeezing transforms are not rejected for roundoff. Throws
  // std::invalid_argument otherwise.
  static SymplecticTransform from_matrix(const Eigen::Matrix4d& m);

  const Eigen::Matrix4d& matrix() const noexcept { return m_; }

  // Exact group inverse -Omega M^T Omega; no linear solve involved.
  SymplecticTransform inverse() const;

  // Composition matches operator composition: the matrix of U followed
  // by V acting via conjugation is matrix(U) * matrix(V).
  friend SymplecticTransform operator*(const SymplecticTransform& lhs,
                                       const SymplecticTransform& rhs);

 private:
  explicit SymplecticTransform(const Eigen::Matrix4d& m) : m_(m) {}

  Eigen::Matrix4d m_;
};

// Single-mode squeezer on the given mode (1 or 2):
// X -> exp(-gamma) X, P -> exp(+gamma) P. Either sign of gamma is allowed.
SymplecticTransform single_mode_squeeze(int mode, double gamma);

// Two-mode squeezer with gamma >= 0, c = cosh(gamma), s = sinh(gamma):
//   X1 -> c X1 - s X2,   P1 -> c P1 + s P2,
//   X2 -> c X2 - s X1,   P2 -> c P2 + s P1.
SymplecticTransform two_mode_squeeze(double gamma);

// Full entangling stage: the two-mode squeezer applied after the two
// single-mode squeezers, i.e. matrix product M_12 * M_1 * M_2.
SymplecticTransform entangler_transform(const EntangleParams& params);

struct GaussianTwoModeState {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Identity() * kVacuumVariance;

  static GaussianTwoModeState vacuum();

  // mean -> M mean, cov -> M cov M^T.
  GaussianTwoModeState transformed(const SymplecticTransform& t) const;

  // mean -> mean + shift; the covariance is untouched.
  GaussianTwoModeState displaced(const Eigen::Vector4d& shift) const;
};

// Symplectic spectrum {nu_minus, nu_plus} of a two-mode covariance matrix,
// sorted ascending. Both equal 1/2 exactly when the state is pure.
std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& cov);

// Vacuum pushed through the entangling stage.
GaussianTwoModeState entangled_vacuum(const EntangleParams& params);

// Full protocol state: vacuum, entangler, both players' displacements
// exp(-i x_j P_j) (which shift X_j by x_j), then the inverse entangler.
// Strategies must be finite and >= 0.
GaussianTwoModeState final_state(const EntangleParams& params,
                                 const StrategyProfile& x);

// Second moments of one mode after discarding the other, plus the
// symplectic eigenvalue nu = sqrt(var_x var_p - cov_xp^2) of the
// reduced 2x2 block. nu >= 1/2 for any physical state, with equality
// iff the mode is unentangled with its partner.
struct ReducedModeStats {
  double var_x = 0.0;
  double var_p = 0.0;
  double cov_xp = 0.0;
  double nu = 0.0;
};

ReducedModeStats reduced_mode_stats(const GaussianTwoModeState& state,
                                    int mode);

// Von Neumann entropy of a single mode with symplectic eigenvalue nu:
//   S(nu) = (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2),
// evaluated in a form that stays accurate both near nu = 1/2 and for
// large nu. S(1/2) = 0. Throws std::domain_error for nu < 1/2 beyond
// roundoff.
double vn_entropy_from_nu(double nu);

// Parameters of the position-representation wavefunction of the entangled
// vacuum, psi(x1, x2) ~ exp(-[alpha x1^2 + beta x2^2 + 2 gamma_c x1 x2]/2),
// together with the hyperbolic-tangent reparametrization lambda_i of the
// squeezing inputs. The inverse of [[alpha, gamma_c], [gamma_c, beta]] is
// twice the X-block of the entangled vacuum covariance.
struct WavefunctionParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma_c = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda12 = 0.0;
};

WavefunctionParams wavefunction_params(const EntangleParams& params);

}  // namespace qcournot::gaussian
