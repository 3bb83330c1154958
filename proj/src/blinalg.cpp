#include "fclust/blinalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fclust/error.hpp"

namespace fclust {

// ---------------------------------------------------------------- CholeskyFactor

CholeskyFactor::CholeskyFactor(std::size_t m, std::size_t r, std::vector<double> band)
    : m_(m), r_(r), band_(std::move(band)) {
  if (m_ == 0) throw DimensionError("empty Cholesky factor");
  if (r_ >= m_) throw DimensionError("bandwidth must be below the dimension");
  if (band_.size() != m_ * (r_ + 1)) throw DimensionError("band storage size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    const double d = get(i, i);
    if (!(d > 0.0)) throw NotPositiveDefinite("Cholesky factor with non-positive diagonal", i);
    acc += std::log(d);
  }
  logdet_ = 2.0 * acc;
}

void CholeskyFactor::check_dim(Eigen::Index rows) const {
  if (static_cast<std::size_t>(rows) != m_)
    throw DimensionError("dimension mismatch: factor is " + std::to_string(m_) + ", operand " +
                         std::to_string(rows));
}

double CholeskyFactor::at(std::size_t i, std::size_t j) const {
  if (i >= m_ || j >= m_) throw DimensionError("index out of range");
  if (j > i || i - j > r_) return 0.0;
  return get(i, j);
}

Vector CholeskyFactor::forward_solve(const Vector& b) const {
  check_dim(b.size());
  Vector x(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t j0 = i > r_ ? i - r_ : 0;
    const double* row = &band_[i * (r_ + 1) + (j0 + r_ - i)];
    double s = b[static_cast<Eigen::Index>(i)];
    for (std::size_t j = j0; j < i; ++j) s -= row[j - j0] * x[static_cast<Eigen::Index>(j)];
    x[static_cast<Eigen::Index>(i)] = s / get(i, i);
  }
  return x;
}

Vector CholeskyFactor::back_solve(const Vector& y) const {
  check_dim(y.size());
  Vector x(m_);
  for (std::size_t i = m_; i-- > 0;) {
    const std::size_t k1 = std::min(m_ - 1, i + r_);
    double s = y[static_cast<Eigen::Index>(i)];
    for (std::size_t k = i + 1; k <= k1; ++k) s -= get(k, i) * x[static_cast<Eigen::Index>(k)];
    x[static_cast<Eigen::Index>(i)] = s / get(i, i);
  }
  return x;
}

Vector CholeskyFactor::solve(const Vector& b) const { return back_solve(forward_solve(b)); }

Matrix CholeskyFactor::solve(const Matrix& b) const {
  check_dim(b.rows());
  Matrix out(b.rows(), b.cols());
  for (Eigen::Index c = 0; c < b.cols(); ++c) out.col(c) = solve(Vector(b.col(c)));
  return out;
}

Vector CholeskyFactor::lower_multiply(const Vector& z) const {
  check_dim(z.size());
  Vector out(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t j0 = i > r_ ? i - r_ : 0;
    double s = 0.0;
    for (std::size_t j = j0; j <= i; ++j) s += get(i, j) * z[static_cast<Eigen::Index>(j)];
    out[static_cast<Eigen::Index>(i)] = s;
  }
  return out;
}

double CholeskyFactor::quad_form(const Vector& v) const { return forward_solve(v).squaredNorm(); }

Matrix CholeskyFactor::to_dense() const {
  Matrix l = Matrix::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t j0 = i > r_ ? i - r_ : 0;
    for (std::size_t j = j0; j <= i; ++j)
      l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = get(i, j);
  }
  return l;
}

// ---------------------------------------------------------------- BandedSPD

BandedSPD::BandedSPD(std::size_t m, std::size_t r) : m_(m), r_(r), band_(m * (r + 1), 0.0) {
  if (m_ == 0) throw DimensionError("empty banded matrix");
  if (r_ >= m_) throw DimensionError("bandwidth must be at most m - 1");
}

BandedSPD BandedSPD::from_dense(const Matrix& a, std::size_t r) {
  if (a.rows() != a.cols()) throw DimensionError("banded matrix from a non-square input");
  const auto m = static_cast<std::size_t>(a.rows());
  BandedSPD out(m, std::min(r, m - 1));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j0 = i > out.r_ ? i - out.r_ : 0;
    for (std::size_t j = j0; j <= i; ++j)
      out.ref(i, j) = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  return out;
}

BandedSPD BandedSPD::identity(std::size_t m, double diagonal) {
  BandedSPD out(m, 0);
  std::fill(out.band_.begin(), out.band_.end(), diagonal);
  return out;
}

double BandedSPD::operator()(std::size_t i, std::size_t j) const {
  if (i >= m_ || j >= m_) throw DimensionError("index out of range");
  if (j > i) std::swap(i, j);
  if (i - j > r_) return 0.0;
  return get(i, j);
}

void BandedSPD::set(std::size_t i, std::size_t j, double value) {
  if (i >= m_ || j >= m_) throw DimensionError("index out of range");
  if (j > i) std::swap(i, j);
  if (i - j > r_) throw DimensionError("entry outside the band");
  ref(i, j) = value;
  factor_.reset();
}

void BandedSPD::add_diagonal(double value) {
  for (std::size_t i = 0; i < m_; ++i) ref(i, i) += value;
  factor_.reset();
}

void BandedSPD::apply_diagonal_shift(double value) {
  add_diagonal(value);
  shift_ += value;
}

double BandedSPD::max_diagonal() const {
  double best = get(0, 0);
  for (std::size_t i = 1; i < m_; ++i) best = std::max(best, get(i, i));
  return best;
}

Matrix BandedSPD::to_dense() const {
  const auto m = static_cast<Eigen::Index>(m_);
  Matrix a = Matrix::Zero(m, m);
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t j0 = i > r_ ? i - r_ : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      a(ii, jj) = a(jj, ii) = get(i, j);
    }
  }
  return a;
}

Vector BandedSPD::multiply(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != m_) throw DimensionError("banded multiply dimension mismatch");
  Vector y = Vector::Zero(x.size());
  for (std::size_t i = 0; i < m_; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const std::size_t j0 = i > r_ ? i - r_ : 0;
    y[ii] += get(i, i) * x[ii];
    for (std::size_t j = j0; j < i; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const double a = get(i, j);
      y[ii] += a * x[jj];
      y[jj] += a * x[ii];
    }
  }
  return y;
}

BandedSPD BandedSPD::scaled(double factor) const {
  BandedSPD out(m_, r_);
  for (std::size_t k = 0; k < band_.size(); ++k) out.band_[k] = factor * band_[k];
  out.shift_ = factor * shift_;
  return out;
}

BandedSPD BandedSPD::combine(double a, const BandedSPD& lhs, double b, const BandedSPD& rhs) {
  if (lhs.m_ != rhs.m_) throw DimensionError("banded sum dimension mismatch");
  BandedSPD out(lhs.m_, std::max(lhs.r_, rhs.r_));
  for (std::size_t i = 0; i < out.m_; ++i) {
    const std::size_t j0 = i > out.r_ ? i - out.r_ : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      double v = 0.0;
      if (i - j <= lhs.r_) v += a * lhs.get(i, j);
      if (i - j <= rhs.r_) v += b * rhs.get(i, j);
      out.ref(i, j) = v;
    }
  }
  return out;
}

const CholeskyFactor& BandedSPD::factor() {
  if (factor_) return *factor_;
  try {
    factor_.emplace(banded_cholesky(*this));
  } catch (const NotPositiveDefinite&) {
    const double eps = 1e-8 * std::max(max_diagonal(), 0.0);
    const double lambda_min = min_eigenvalue(to_dense());
    const double shift = std::max(eps - lambda_min, 0.0);
    for (std::size_t i = 0; i < m_; ++i) ref(i, i) += shift;
    shift_ += shift;
    factor_.emplace(banded_cholesky(*this));
  }
  return *factor_;
}

// ---------------------------------------------------------------- factorizations

CholeskyFactor banded_cholesky(const BandedSPD& a) {
  const std::size_t m = a.m_, r = a.r_, w = r + 1;
  std::vector<double> l(m * w, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j0 = i > r ? i - r : 0;
    double* li = &l[i * w];
    for (std::size_t j = j0; j <= i; ++j) {
      const double* lj = &l[j * w];
      double s = a.get(i, j);
      // k runs over max(i - r, j - r) .. j - 1 = j0 .. j - 1 because j >= j0.
      for (std::size_t k = j0; k < j; ++k) s -= li[k + r - i] * lj[k + r - j];
      if (j == i) {
        if (!(s > 0.0) || !std::isfinite(s))
          throw NotPositiveDefinite("banded Cholesky: non-positive pivot at row " + std::to_string(i), i);
        li[r] = std::sqrt(s);
      } else {
        li[j + r - i] = s / lj[r];
      }
    }
  }
  return CholeskyFactor(m, r, std::move(l));
}

CholeskyFactor dense_cholesky(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw DimensionError("dense Cholesky needs a non-empty square matrix");
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("dense Cholesky: matrix is not positive definite", 0);
  const Matrix l = llt.matrixL();
  const auto m = static_cast<std::size_t>(a.rows());
  const std::size_t r = m - 1, w = m;
  std::vector<double> band(m * w, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      band[i * w + (j + r - i)] = l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return CholeskyFactor(m, r, std::move(band));
}

Vector solve(const CholeskyFactor& factor, const Vector& b) { return factor.solve(b); }
Matrix solve(const CholeskyFactor& factor, const Matrix& b) { return factor.solve(b); }
double logdet(const CholeskyFactor& factor) { return factor.logdet(); }
double quad_form(const CholeskyFactor& factor, const Vector& v) { return factor.quad_form(v); }

// ---------------------------------------------------------------- spectra

Vector eigenvalues_descending(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw DimensionError("eigenvalues of a non-square matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  return solver.eigenvalues().reverse();
}

double min_eigenvalue(const Matrix& a) {
  const Vector ev = eigenvalues_descending(a);
  return ev[ev.size() - 1];
}

double symmetric_operator_norm(const Matrix& a) {
  const Vector ev = eigenvalues_descending(a);
  return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

}  // namespace fclust
