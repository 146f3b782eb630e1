#include "cstar/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cstar {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

// Rank cut-off for singular values: 1e-10 * (1 + ||a||).
double rank_cutoff(double norm) { return 1e-10 * (1.0 + norm); }

}  // namespace

MatElement::MatElement(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() < 1) {
    fail(ErrorCode::invalid_argument, "matrix dimension must be at least 1");
  }
  if (m_.rows() != m_.cols()) {
    fail(ErrorCode::not_square, std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
  if (!m_.allFinite()) {
    fail(ErrorCode::non_finite, "matrix has NaN or infinite entries");
  }
}

MatElement MatElement::identity(Index dim) {
  return MatElement(ComplexMatrix::Identity(dim, dim));
}

MatElement MatElement::zero(Index dim) {
  return MatElement(ComplexMatrix::Zero(dim, dim));
}

MatElement MatElement::diagonal(std::span<const double> values) {
  const auto n = static_cast<Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return MatElement(std::move(m));
}

MatElement MatElement::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

MatElement MatElement::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Index>(rows.size());
  ComplexMatrix m(n, n);
  Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n) {
      fail(ErrorCode::not_square, "row " + std::to_string(r) + " has wrong length");
    }
    Index c = 0;
    for (const auto& x : row) m(r, c++) = x;
    ++r;
  }
  return MatElement(std::move(m));
}

MatElement MatElement::unit(Index dim, Index row, Index col) {
  if (row < 1 || col < 1 || row > dim || col > dim) {
    fail(ErrorCode::invalid_argument, "matrix unit index out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(row - 1, col - 1) = 1.0;
  return MatElement(std::move(m));
}

MatElement MatElement::rank_one_projector(const Eigen::VectorXcd& v) {
  const double n = v.norm();
  if (!(n > 0.0)) fail(ErrorCode::invalid_argument, "zero vector has no projector");
  const Eigen::VectorXcd u = v / n;
  return MatElement(u * u.adjoint());
}

MatElement MatElement::adjoint() const { return MatElement(m_.adjoint()); }

MatElement operator+(const MatElement& a, const MatElement& b) {
  require_same_dim(a, b);
  return MatElement(a.m_ + b.m_);
}

MatElement operator-(const MatElement& a, const MatElement& b) {
  require_same_dim(a, b);
  return MatElement(a.m_ - b.m_);
}

MatElement operator*(const MatElement& a, const MatElement& b) {
  require_same_dim(a, b);
  return MatElement(a.m_ * b.m_);
}

MatElement operator*(Complex s, const MatElement& a) { return MatElement(s * a.m_); }

MatElement operator-(const MatElement& a) { return MatElement(-a.m_); }

void require_same_dim(const MatElement& a, const MatElement& b) {
  if (a.dim() != b.dim()) {
    fail(ErrorCode::dimension_mismatch,
         std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

double op_norm(const MatElement& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a.matrix());
  return svd.singularValues()(0);
}

double default_tolerance(const MatElement& a) { return 1e-8 * (1.0 + op_norm(a)); }

double resolve_tolerance(Tolerance tol, const MatElement& a) {
  if (tol) {
    if (!(*tol >= 0.0) || !std::isfinite(*tol)) {
      fail(ErrorCode::invalid_argument, "tolerance must be finite and nonnegative");
    }
    return *tol;
  }
  return default_tolerance(a);
}

HermitianEigen hermitian_eigen(const MatElement& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a.matrix()));
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::invalid_argument, "Hermitian eigensolver did not converge");
  }
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  for (Index j = 0; j < out.vectors.cols(); ++j) {
    auto col = out.vectors.col(j);
    // First entry whose modulus is within rounding of the maximum.
    const double top = col.cwiseAbs().maxCoeff();
    Index pivot = 0;
    while (std::abs(col(pivot)) < top * (1.0 - 1e-9)) ++pivot;
    const Complex phase = col(pivot) / std::abs(col(pivot));
    col *= std::conj(phase);
    col(pivot) = std::abs(col(pivot));
  }
  return out;
}

MatElement from_eigen(const ComplexMatrix& vectors, const Eigen::VectorXd& values) {
  ComplexMatrix m = vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
  return MatElement(hermitian_part(m));
}

bool is_self_adjoint(const MatElement& a, Tolerance tol) {
  const double t = resolve_tolerance(tol, a);
  return op_norm(MatElement(a.matrix() - a.matrix().adjoint())) <= t;
}

bool is_positive(const MatElement& a, Tolerance tol) {
  const double t = resolve_tolerance(tol, a);
  if (!is_self_adjoint(a, t)) return false;
  return hermitian_eigen(a).values(0) >= -t;
}

bool is_projection(const MatElement& a, Tolerance tol) {
  const double t = resolve_tolerance(tol, a);
  if (!is_positive(a, t)) return false;
  return op_norm(MatElement(a.matrix() * a.matrix() - a.matrix())) <= t;
}

bool is_partial_isometry(const MatElement& a, Tolerance tol) {
  const double t = resolve_tolerance(tol, a);
  const ComplexMatrix s = a.matrix().adjoint() * a.matrix();
  return op_norm(MatElement(s * s - s)) <= t;
}

ConeFlags cone_flags(const MatElement& a, Tolerance tol) {
  ConeFlags f;
  f.tolerance = resolve_tolerance(tol, a);
  f.is_self_adjoint = is_self_adjoint(a, f.tolerance);
  f.is_positive = f.is_self_adjoint && is_positive(a, f.tolerance);
  f.is_projection = f.is_positive && is_projection(a, f.tolerance);
  f.is_partial_isometry = is_partial_isometry(a, f.tolerance);
  return f;
}

void require_self_adjoint(const MatElement& a, Tolerance tol, const char* what) {
  if (!is_self_adjoint(a, tol)) fail(ErrorCode::not_self_adjoint, what);
}

void require_positive(const MatElement& a, Tolerance tol, const char* what) {
  if (!is_positive(a, tol)) fail(ErrorCode::not_positive, what);
}

void require_projection(const MatElement& a, Tolerance tol, const char* what) {
  if (!is_projection(a, tol)) fail(ErrorCode::not_projection, what);
}

HermParts herm_decompose(const MatElement& a) {
  const ComplexMatrix& m = a.matrix();
  const Complex two_i(0.0, 2.0);
  return {MatElement((m + m.adjoint()) * 0.5), MatElement((m - m.adjoint()) / two_i)};
}

namespace {

std::pair<MatElement, MatElement> positive_negative_parts(const MatElement& h) {
  const HermitianEigen e = hermitian_eigen(h);
  const Eigen::VectorXd pos = e.values.cwiseMax(0.0);
  const Eigen::VectorXd neg = (-e.values).cwiseMax(0.0);
  return {from_eigen(e.vectors, pos), from_eigen(e.vectors, neg)};
}

}  // namespace

JordanParts jordan_decompose(const MatElement& a) {
  const HermParts parts = herm_decompose(a);
  auto [b1, b2] = positive_negative_parts(parts.real);
  auto [c1, c2] = positive_negative_parts(parts.imag);
  return {std::move(b1), std::move(b2), std::move(c1), std::move(c2)};
}

PolarParts polar_decompose(const MatElement& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = rank_cutoff(sigma(0));
  const Index d = a.dim();
  ComplexMatrix v = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) v += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
  }
  const ComplexMatrix& w = svd.matrixV();
  ComplexMatrix abs = w * sigma.cast<Complex>().asDiagonal() * w.adjoint();
  return {MatElement(std::move(v)), MatElement(hermitian_part(abs))};
}

bool loewner_leq(const MatElement& a, const MatElement& b, double tol) {
  require_same_dim(a, b);
  require_self_adjoint(a, std::max(tol, default_tolerance(a)), "loewner_leq: a");
  require_self_adjoint(b, std::max(tol, default_tolerance(b)), "loewner_leq: b");
  return hermitian_eigen(b - a).values(0) >= -tol;
}

double infinitesimal_gap(const MatElement& a, const MatElement& b) {
  require_same_dim(a, b);
  require_self_adjoint(a, {}, "infinitesimal_gap: a");
  require_self_adjoint(b, {}, "infinitesimal_gap: b");
  const Eigen::VectorXd values = hermitian_eigen(a - b).values;
  return std::max(0.0, values(values.size() - 1));
}

}  // namespace cstar
