#pragma once

// Matrix *-algebra substrate: the element type, norm, cone predicates, the
// Loewner order and the canonical decompositions (Hermitian, Jordan, polar).

#include <complex>
#include <initializer_list>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "cstar/error.hpp"

namespace cstar {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;

/// Optional absolute tolerance; when empty, operations use default_tolerance().
using Tolerance = std::optional<double>;

/// Immutable dense complex square matrix with finite entries and dim >= 1.
class MatElement {
 public:
  explicit MatElement(ComplexMatrix m);

  static MatElement identity(Index dim);
  static MatElement zero(Index dim);
  static MatElement diagonal(std::span<const double> values);
  static MatElement diagonal(std::initializer_list<double> values);
  /// Row-major construction, mainly for tests and examples.
  static MatElement from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  /// Matrix unit e_{row,col} (1-based, as written in the literature).
  static MatElement unit(Index dim, Index row, Index col);
  /// Orthogonal projector onto span{v} (v need not be normalized, must be nonzero).
  static MatElement rank_one_projector(const Eigen::VectorXcd& v);

  Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Index row, Index col) const { return m_(row, col); }

  MatElement adjoint() const;
  Complex trace() const { return m_.trace(); }

  friend MatElement operator+(const MatElement& a, const MatElement& b);
  friend MatElement operator-(const MatElement& a, const MatElement& b);
  friend MatElement operator*(const MatElement& a, const MatElement& b);
  friend MatElement operator*(Complex s, const MatElement& a);
  friend MatElement operator*(const MatElement& a, Complex s) { return s * a; }
  friend MatElement operator-(const MatElement& a);

 private:
  ComplexMatrix m_;
};

void require_same_dim(const MatElement& a, const MatElement& b);

/// Largest singular value.
double op_norm(const MatElement& a);

/// 1e-8 * (1 + ||a||): the scale-invariant default for every cone predicate.
double default_tolerance(const MatElement& a);
double resolve_tolerance(Tolerance tol, const MatElement& a);

/// Eigen-decomposition of the Hermitian part (a + a*)/2. Eigenvalues ascend;
/// eigenvectors are orthonormal and phase-normalized so that the first
/// component of largest modulus is real and positive.
struct HermitianEigen {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};
HermitianEigen hermitian_eigen(const MatElement& a);

/// Builds V diag(values) V* from orthonormal columns V.
MatElement from_eigen(const ComplexMatrix& vectors, const Eigen::VectorXd& values);

struct ConeFlags {
  bool is_self_adjoint = false;
  bool is_positive = false;
  bool is_projection = false;
  bool is_partial_isometry = false;
  double tolerance = 0.0;
};

bool is_self_adjoint(const MatElement& a, Tolerance tol = {});
/// Self-adjoint and min eigenvalue >= -tol.
bool is_positive(const MatElement& a, Tolerance tol = {});
/// Positive and ||a^2 - a|| <= tol.
bool is_projection(const MatElement& a, Tolerance tol = {});
/// a*a is a projection within tol.
bool is_partial_isometry(const MatElement& a, Tolerance tol = {});
ConeFlags cone_flags(const MatElement& a, Tolerance tol = {});

void require_self_adjoint(const MatElement& a, Tolerance tol, const char* what);
void require_positive(const MatElement& a, Tolerance tol, const char* what);
void require_projection(const MatElement& a, Tolerance tol, const char* what);

/// a = real + i * imag with both parts self-adjoint.
struct HermParts {
  MatElement real;
  MatElement imag;
};
HermParts herm_decompose(const MatElement& a);

/// a = (pos_real - neg_real) + i (pos_imag - neg_imag), all four positive,
/// pos_real * neg_real = 0 and pos_imag * neg_imag = 0.
struct JordanParts {
  MatElement pos_real;
  MatElement neg_real;
  MatElement pos_imag;
  MatElement neg_imag;
};
JordanParts jordan_decompose(const MatElement& a);

/// a = isometry * abs with abs = (a*a)^{1/2}; isometry is a partial isometry
/// that vanishes on ker(abs). The zero matrix maps to (0, 0).
struct PolarParts {
  MatElement isometry;
  MatElement abs;
};
PolarParts polar_decompose(const MatElement& a);

/// a <= b iff lambda_min(b - a) >= -tol.
bool loewner_leq(const MatElement& a, const MatElement& b, double tol);

/// Smallest eps >= 0 with a <= b + eps * 1, i.e. max(0, lambda_max(a - b)).
double infinitesimal_gap(const MatElement& a, const MatElement& b);

}  // namespace cstar
