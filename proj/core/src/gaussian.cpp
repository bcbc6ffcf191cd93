#include "qcournot/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcournot::gaussian {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(name) + " must be finite");
  }
}

double symplectic_residual(const Eigen::Matrix4d& m) {
  Eigen::Matrix4d omega = symplectic_form();
  return (m.transpose() * omega * m - omega).cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

SymplecticTransform SymplecticTransform::identity() {
  return SymplecticTransform(Eigen::Matrix4d::Identity());
}

SymplecticTransform SymplecticTransform::from_matrix(const Eigen::Matrix4d& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("symplectic matrix entries must be finite");
  }
  double scale = m.cwiseAbs().maxCoeff();
  double tol = 1e-12 * std::max(1.0, scale * scale);
  if (symplectic_residual(m) > tol) {
    throw std::invalid_argument("matrix does not satisfy M^T Omega M = Omega");
  }
  return SymplecticTransform(m);
}

SymplecticTransform SymplecticTransform::inverse() const {
  Eigen::Matrix4d omega = symplectic_form();
  Eigen::Matrix4d inv = -omega * m_.transpose() * omega;
  return SymplecticTransform(inv);
}

SymplecticTransform operator*(const SymplecticTransform& lhs,
                              const SymplecticTransform& rhs) {
  return SymplecticTransform(Eigen::Matrix4d(lhs.m_ * rhs.m_));
}

SymplecticTransform single_mode_squeeze(int mode, double gamma) {
  require_finite(gamma, "gamma");
  if (mode != 1 && mode != 2) {
    throw std::invalid_argument("mode must be 1 or 2");
  }
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  int i = (mode == 1) ? 0 : 2;
  m(i, i) = std::exp(-gamma);
  m(i + 1, i + 1) = std::exp(gamma);
  return SymplecticTransform::from_matrix(m);
}

SymplecticTransform two_mode_squeeze(double gamma) {
  require_finite(gamma, "gamma");
  if (gamma < 0.0) {
    throw std::domain_error("two-mode squeezing parameter must be >= 0");
  }
  double c = std::cosh(gamma);
  double s = std::sinh(gamma);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  // X-quadratures attract with a relative minus sign, P-quadratures with
  // a plus sign; this is what makes the X1 - X2 correlation negative.
  m(0, 0) = c;
  m(0, 2) = -s;
  m(2, 2) = c;
  m(2, 0) = -s;
  m(1, 1) = c;
  m(1, 3) = s;
  m(3, 3) = c;
  m(3, 1) = s;
  return SymplecticTransform::from_matrix(m);
}

SymplecticTransform entangler_transform(const EntangleParams& params) {
  return two_mode_squeeze(params.gamma12()) *
         single_mode_squeeze(1, params.gamma1()) *
         single_mode_squeeze(2, params.gamma2());
}

GaussianTwoModeState GaussianTwoModeState::vacuum() {
  return GaussianTwoModeState{};
}

GaussianTwoModeState GaussianTwoModeState::transformed(
    const SymplecticTransform& t) const {
  const Eigen::Matrix4d& m = t.matrix();
  GaussianTwoModeState out;
  out.mean = m * mean;
  out.cov = m * cov * m.transpose();
  return out;
}

GaussianTwoModeState GaussianTwoModeState::displaced(
    const Eigen::Vector4d& shift) const {
  GaussianTwoModeState out = *this;
  out.mean += shift;
  return out;
}

std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& cov) {
  Eigen::Matrix2d a = cov.block<2, 2>(0, 0);
  Eigen::Matrix2d b = cov.block<2, 2>(2, 2);
  Eigen::Matrix2d c = cov.block<2, 2>(0, 2);
  double delta = a.determinant() + b.determinant() + 2.0 * c.determinant();
  double det = cov.determinant();
  double disc = delta * delta - 4.0 * det;
  if (disc < 0.0) disc = 0.0;  // roundoff on degenerate spectra
  double root = std::sqrt(disc);
  double hi = std::sqrt(std::max(0.0, (delta + root) / 2.0));
  double lo = std::sqrt(std::max(0.0, (delta - root) / 2.0));
  return {lo, hi};
}

GaussianTwoModeState entangled_vacuum(const EntangleParams& params) {
  return GaussianTwoModeState::vacuum().transformed(
      entangler_transform(params));
}

GaussianTwoModeState final_state(const EntangleParams& params,
                                 const StrategyProfile& x) {
  require_finite(x.x1, "x1");
  require_finite(x.x2, "x2");
  if (x.x1 < 0.0 || x.x2 < 0.0) {
    throw std::domain_error("strategies must be >= 0");
  }
  SymplecticTransform j = entangler_transform(params);
  SymplecticTransform j_inv = j.inverse();
  Eigen::Vector4d shift(x.x1, 0.0, x.x2, 0.0);
  // The displacement commutes with the covariance update, so the two
  // squeezing stages fuse into one near-identity map. Sandwiching the
  // vacuum through each stage separately would push the covariance
  // through entries of order cosh^2 and lose digits to cancellation.
  Eigen::Matrix4d fused = j_inv.matrix() * j.matrix();
  GaussianTwoModeState out;
  out.mean = j_inv.matrix() * shift;
  out.cov = fused * (kVacuumVariance * Eigen::Matrix4d::Identity()) *
            fused.transpose();
  return out;
}

ReducedModeStats reduced_mode_stats(const GaussianTwoModeState& state,
                                    int mode) {
  if (mode != 1 && mode != 2) {
    throw std::invalid_argument("mode must be 1 or 2");
  }
  int i = (mode == 1) ? 0 : 2;
  ReducedModeStats stats;
  stats.var_x = state.cov(i, i);
  stats.var_p = state.cov(i + 1, i + 1);
  stats.cov_xp = state.cov(i, i + 1);
  double det = stats.var_x * stats.var_p - stats.cov_xp * stats.cov_xp;
  stats.nu = std::sqrt(std::max(det, 0.0));
  return stats;
}

double vn_entropy_from_nu(double nu) {
  require_finite(nu, "nu");
  if (nu < kVacuumVariance - 1e-10) {
    throw std::domain_error("symplectic eigenvalue must be >= 1/2");
  }
  double below = nu - kVacuumVariance;
  if (below <= 0.0) return 0.0;
  // a ln a - b ln b with a = nu + 1/2, b = nu - 1/2, rewritten as
  // nu ln(a/b) + (1/2)(ln a + ln b). The log1p form keeps full precision
  // for large nu, where the direct difference cancels catastrophically;
  // the logs stay separate because their product overflows near 1e154.
  double above = nu + kVacuumVariance;
  return nu * std::log1p(1.0 / below) +
         0.5 * (std::log(above) + std::log(below));
}

WavefunctionParams wavefunction_params(const EntangleParams& params) {
  WavefunctionParams w;
  w.lambda1 = std::tanh(params.gamma1());
  w.lambda2 = std::tanh(params.gamma2());
  w.lambda12 = std::tanh(params.gamma12());
  double l1 = w.lambda1;
  double l2 = w.lambda2;
  double l12sq = w.lambda12 * w.lambda12;
  double denom = (1.0 - l1) * (1.0 - l2) * (1.0 - l12sq);
  w.alpha = ((1.0 + l1) * (1.0 - l2) + (1.0 - l1) * (1.0 + l2) * l12sq) / denom;
  w.beta = ((1.0 - l1) * (1.0 + l2) + (1.0 + l1) * (1.0 - l2) * l12sq) / denom;
  w.gamma_c = 2.0 * w.lambda12 * (1.0 - l1 * l2) / denom;
  if (!std::isfinite(w.alpha) || !std::isfinite(w.beta) ||
      !std::isfinite(w.gamma_c)) {
    throw std::domain_error(
        "wavefunction parameters overflow at this squeezing strength");
  }
  return w;
}

}  // namespace qcournot::gaussian
