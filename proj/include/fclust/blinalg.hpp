#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace fclust {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Lower-triangular Cholesky factor L (A = L Lᵀ) kept in lower-band storage.
///
/// Row i holds L(i, i-r) .. L(i, i) contiguously; entries left of the matrix
/// edge are padding. A dense factor is the special case r = m - 1.
class CholeskyFactor {
 public:
  CholeskyFactor(std::size_t m, std::size_t r, std::vector<double> band);

  std::size_t dim() const noexcept { return m_; }
  std::size_t bandwidth() const noexcept { return r_; }

  /// L(i, j); zero above the diagonal and outside the band.
  double at(std::size_t i, std::size_t j) const;
  double logdet() const noexcept { return logdet_; }

  Vector forward_solve(const Vector& b) const;  // L⁻¹ b
  Vector back_solve(const Vector& y) const;     // L⁻ᵀ y
  Vector solve(const Vector& b) const;          // A⁻¹ b
  Matrix solve(const Matrix& b) const;
  Vector lower_multiply(const Vector& z) const;  // L z
  /// vᵀ A⁻¹ v.
  double quad_form(const Vector& v) const;
  Matrix to_dense() const;

 private:
  double& ref(std::size_t i, std::size_t j) { return band_[i * (r_ + 1) + (j + r_ - i)]; }
  double get(std::size_t i, std::size_t j) const { return band_[i * (r_ + 1) + (j + r_ - i)]; }
  void check_dim(Eigen::Index rows) const;

  std::size_t m_;
  std::size_t r_;
  std::vector<double> band_;
  double logdet_ = 0.0;
};

/// Symmetric banded matrix in lower-band row-major storage, (r+1) diagonals.
///
/// The factor cache is mutable state owned by the matrix: callers sharing one
/// BandedSPD across threads must synchronize.
class BandedSPD {
 public:
  BandedSPD(std::size_t m, std::size_t r);

  /// Copies the lower band of a dense symmetric matrix; off-band entries are dropped.
  static BandedSPD from_dense(const Matrix& a, std::size_t r);
  static BandedSPD identity(std::size_t m, double diagonal = 1.0);

  std::size_t dim() const noexcept { return m_; }
  std::size_t bandwidth() const noexcept { return r_; }

  double operator()(std::size_t i, std::size_t j) const;
  /// Sets A(i, j) = A(j, i) = value. Requires |i - j| <= r.
  void set(std::size_t i, std::size_t j, double value);
  void add_diagonal(double value);
  /// add_diagonal() that is also recorded in diagonal_shift().
  void apply_diagonal_shift(double value);
  double max_diagonal() const;

  Matrix to_dense() const;
  Vector multiply(const Vector& x) const;

  BandedSPD scaled(double factor) const;
  /// a·A + b·B; the result carries the wider of the two bandwidths.
  static BandedSPD combine(double a, const BandedSPD& lhs, double b, const BandedSPD& rhs);

  /// Banded Cholesky, cached. On a non-positive pivot the smallest eigenvalue
  /// is measured, a minimal diagonal shift applied, and the factorization
  /// retried once; a second failure propagates NotPositiveDefinite.
  const CholeskyFactor& factor();
  double logdet() { return factor().logdet(); }
  /// Total diagonal shift added by PD corrections so far.
  double diagonal_shift() const noexcept { return shift_; }

 private:
  friend CholeskyFactor banded_cholesky(const BandedSPD& a);
  double get(std::size_t i, std::size_t j) const { return band_[i * (r_ + 1) + (j + r_ - i)]; }
  double& ref(std::size_t i, std::size_t j) { return band_[i * (r_ + 1) + (j + r_ - i)]; }

  std::size_t m_;
  std::size_t r_;
  std::vector<double> band_;
  std::optional<CholeskyFactor> factor_;
  double shift_ = 0.0;
};

/// O(m r²) banded Cholesky. Throws NotPositiveDefinite on a non-positive pivot.
CholeskyFactor banded_cholesky(const BandedSPD& a);
/// Dense Cholesky (Eigen LLT); the factor is returned with r = m - 1.
CholeskyFactor dense_cholesky(const Matrix& a);

Vector solve(const CholeskyFactor& factor, const Vector& b);
Matrix solve(const CholeskyFactor& factor, const Matrix& b);
double logdet(const CholeskyFactor& factor);
double quad_form(const CholeskyFactor& factor, const Vector& v);

/// Smallest eigenvalue of a symmetric matrix (dense eigensolver).
double min_eigenvalue(const Matrix& a);
/// All eigenvalues, sorted descending.
Vector eigenvalues_descending(const Matrix& a);
/// Spectral norm of a symmetric matrix, max |λ|.
double symmetric_operator_norm(const Matrix& a);

}  // namespace fclust
