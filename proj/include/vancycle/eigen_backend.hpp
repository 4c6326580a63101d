#pragma once

// Floating-point Krylov supports through the eigendecomposition of a real
// skew-symmetric matrix. Exact routines stay the reference; this is for
// large sweeps and cross-checks.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "vancycle/errors.hpp"
#include "vancycle/exactlin.hpp"

namespace vancycle {

inline constexpr double kDefaultEigenTol = 1e-9;
inline constexpr double kDefaultSeparationTol = 1e-7;

struct EigenSupport {
  std::vector<std::complex<double>> eigenvalues;
  /// Expansion coefficients of v over the unit eigenvectors.
  std::vector<std::complex<double>> coefficients;
  std::size_t support_dim = 0;
  /// Smallest gap between distinct eigenvalues; below the separation
  /// threshold the support no longer determines the Krylov span.
  double min_gap = std::numeric_limits<double>::infinity();
  bool reliable = true;
};

/// Diagonalizes psi once (as the Hermitian matrix i*psi) and answers support
/// and membership queries for many vectors.
class EigenKrylov {
 public:
  explicit EigenKrylov(const IntMatrix& psi, double separation_tol = kDefaultSeparationTol) : n_(psi.size()) {
    if (!psi.is_skew_symmetric()) throw PreconditionError("eigen backend needs a skew-symmetric matrix");
    Eigen::MatrixXcd herm(n_, n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c)
        herm(r, c) = std::complex<double>(0.0, static_cast<double>(psi(r, c)));
    if (n_ > 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
      if (solver.info() != Eigen::Success) throw EigenFailure("Hermitian eigensolver did not converge");
      mu_ = solver.eigenvalues();
      u_ = solver.eigenvectors();
    }
    for (std::size_t k = 0; k + 1 < n_; ++k) min_gap_ = std::min(min_gap_, mu_(k + 1) - mu_(k));
    reliable_ = !(min_gap_ < separation_tol);
  }

  std::size_t dim() const noexcept { return n_; }
  bool reliable() const noexcept { return reliable_; }
  double min_gap() const noexcept { return min_gap_; }

  /// Eigenvalues of psi itself: i*psi*u = mu*u  =>  psi*u = -i*mu*u.
  std::vector<std::complex<double>> eigenvalues() const {
    std::vector<std::complex<double>> out(n_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = {0.0, -mu_(static_cast<Eigen::Index>(k))};
    return out;
  }

  Eigen::VectorXcd coefficients(const CycleVector& v) const {
    if (v.dim() != n_) throw DimensionMismatch("vector dimension does not match matrix");
    Eigen::VectorXcd x(n_);
    for (std::size_t i = 0; i < n_; ++i) x(i) = v[i].get_d();
    return u_.adjoint() * x;
  }

  /// Components whose magnitude exceeds tol times the largest one.
  std::vector<bool> support_mask(const CycleVector& v, double tol) const {
    Eigen::VectorXcd r = coefficients(v);
    double mx = n_ ? r.cwiseAbs().maxCoeff() : 0.0;
    std::vector<bool> mask(n_, false);
    if (mx == 0.0) return mask;
    for (std::size_t k = 0; k < n_; ++k) mask[k] = std::abs(r(k)) > tol * mx;
    return mask;
  }

  EigenSupport support(const CycleVector& v, double tol) const {
    EigenSupport s;
    s.eigenvalues = eigenvalues();
    Eigen::VectorXcd r = coefficients(v);
    s.coefficients.assign(r.data(), r.data() + r.size());
    auto mask = support_mask(v, tol);
    s.support_dim = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    s.min_gap = min_gap_;
    s.reliable = reliable_;
    return s;
  }

  /// t lies in the Krylov span of v iff t has no component along an
  /// eigenvector that v misses.
  bool member(const CycleVector& v, const CycleVector& t, double tol) const {
    auto mask = support_mask(v, tol);
    Eigen::VectorXcd s = coefficients(t);
    double mx = n_ ? s.cwiseAbs().maxCoeff() : 0.0;
    if (mx == 0.0) return true;
    for (std::size_t k = 0; k < n_; ++k)
      if (!mask[k] && std::abs(s(k)) > tol * mx) return false;
    return true;
  }

 private:
  std::size_t n_;
  Eigen::VectorXd mu_;
  Eigen::MatrixXcd u_;
  double min_gap_ = std::numeric_limits<double>::infinity();
  bool reliable_ = true;
};

inline EigenSupport eigen_krylov_support(const IntMatrix& psi, const CycleVector& v, double tol = kDefaultEigenTol,
                                         double separation_tol = kDefaultSeparationTol) {
  if (!(tol > 0)) throw PreconditionError("eigen tolerance must be positive");
  return EigenKrylov(psi, separation_tol).support(v, tol);
}

}  // namespace vancycle
