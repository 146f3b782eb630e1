#include "cstar/projection_geometry.hpp"

#include <string>

#include "cstar/functional_calculus.hpp"

namespace cstar {

namespace {

MatElement projector_onto(const ComplexMatrix& orthonormal_cols, Index dim) {
  if (orthonormal_cols.cols() == 0) return MatElement::zero(dim);
  return from_eigen(orthonormal_cols, Eigen::VectorXd::Ones(orthonormal_cols.cols()));
}

std::string rank_detail(Index rp, Index rq) {
  return "rank(p) = " + std::to_string(rp) + ", rank(q) = " + std::to_string(rq);
}

}  // namespace

ComplexMatrix range_basis(const MatElement& p) {
  const HermitianEigen e = hermitian_eigen(p);
  Index first = 0;
  while (first < e.values.size() && e.values(first) <= 0.5) ++first;
  return e.vectors.rightCols(e.values.size() - first);
}

Index projection_rank(const MatElement& p) { return range_basis(p).cols(); }

double projection_defect(const MatElement& a) {
  return op_norm(a - a.adjoint()) + op_norm(a * a - a);
}

RetractionResult retract_projection(const MatElement& a) {
  const double defect = projection_defect(a);
  if (!(defect < 0.25)) {
    fail(ErrorCode::defect_too_large, "projection defect " + std::to_string(defect) + " >= 1/4");
  }
  MatElement p = spectral_projector(herm_decompose(a).real, 0.5);
  const double distance = op_norm(a - p);
  return {std::move(p), distance, defect};
}

RetractionResult retract_partial_isometry(const MatElement& v) {
  const MatElement s = v.adjoint() * v;
  const HermitianEigen e = hermitian_eigen(s);
  for (Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) >= 0.25 && e.values(i) <= 0.75) {
      fail(ErrorCode::gap_violation,
           "eigenvalue " + std::to_string(e.values(i)) + " of v*v lies in [1/4, 3/4]");
    }
  }
  Eigen::VectorXd phi(e.values.size());
  for (Index i = 0; i < phi.size(); ++i) phi(i) = e.values(i) > 0.5 ? 1.0 / std::sqrt(e.values(i)) : 0.0;
  MatElement u = v * from_eigen(e.vectors, phi);
  const double distance = op_norm(v - u);
  return {std::move(u), distance, projection_defect(s)};
}

EquivWitness mvn_witness(const MatElement& p, const MatElement& q, Tolerance tol) {
  require_same_dim(p, q);
  require_projection(p, tol, "mvn_witness: p");
  require_projection(q, tol, "mvn_witness: q");
  const ComplexMatrix bp = range_basis(p);
  const ComplexMatrix bq = range_basis(q);
  if (bp.cols() != bq.cols()) fail(ErrorCode::rank_mismatch, rank_detail(bp.cols(), bq.cols()));
  MatElement u(bq * bp.adjoint());
  const double left = op_norm(u.adjoint() * u - p);
  const double right = op_norm(u * u.adjoint() - q);
  return {std::move(u), left, right};
}

EquivWitness subordination_witness(const MatElement& p, const MatElement& q, Tolerance tol) {
  require_same_dim(p, q);
  require_projection(p, tol, "subordination_witness: p");
  require_projection(q, tol, "subordination_witness: q");
  const ComplexMatrix bp = range_basis(p);
  const ComplexMatrix bq = range_basis(q);
  if (bp.cols() > bq.cols()) fail(ErrorCode::rank_mismatch, rank_detail(bp.cols(), bq.cols()));
  MatElement u(bq.leftCols(bp.cols()) * bp.adjoint());
  const MatElement final_proj = u * u.adjoint();
  const double left = op_norm(u.adjoint() * u - p);
  const double right = op_norm(q * final_proj - final_proj);
  return {std::move(u), left, right};
}

MatElement dominating_lift(const MatElement& q, const MatElement& p0, Tolerance tol) {
  require_same_dim(q, p0);
  require_projection(q, tol, "dominating_lift: q");
  require_projection(p0, tol, "dominating_lift: p0");
  const double delta = op_norm(p0 * q - q);
  if (!(delta < 0.25)) {
    fail(ErrorCode::delta_too_large, "||p0 q - q|| = " + std::to_string(delta) + " >= 1/4");
  }
  const MatElement complement = MatElement::identity(q.dim()) - q;
  // s q = q, so ran(q) sits inside the eigenvalue-1 subspace of s.
  const MatElement s = q + complement * p0 * complement;
  return spectral_projector(herm_decompose(s).real, 0.5);
}

OrthogonalPair orthogonality_repair(const MatElement& p, const MatElement& q, Tolerance tol) {
  require_same_dim(p, q);
  require_projection(p, tol, "orthogonality_repair: p");
  require_projection(q, tol, "orthogonality_repair: q");
  const Index d = p.dim();
  const ComplexMatrix basis = range_basis(p);
  if (basis.cols() == 0) return {MatElement::zero(d), q};

  const ComplexMatrix pushed = (ComplexMatrix::Identity(d, d) - q.matrix()) * basis;
  Eigen::JacobiSVD<ComplexMatrix> svd(pushed, Eigen::ComputeThinU);
  const Eigen::VectorXd& sigma = svd.singularValues();
  if (sigma(sigma.size() - 1) <= 1e-10 * (1.0 + sigma(0))) {
    fail(ErrorCode::rank_collapse, "(1 - q) annihilates part of ran(p)");
  }
  const double delta = op_norm(p * q);
  if (!(delta < 0.1)) fail(ErrorCode::delta_too_large, "||pq|| = " + std::to_string(delta) + " >= 0.1");
  return {projector_onto(svd.matrixU(), d), q};
}

MatElement range_projection_of_product(const MatElement& p, const MatElement& q, Tolerance tol,
                                       double rank_rel) {
  require_same_dim(p, q);
  require_projection(p, tol, "range_projection_of_product: p");
  require_projection(q, tol, "range_projection_of_product: q");
  if (!(rank_rel > 0.0)) fail(ErrorCode::invalid_argument, "rank threshold must be positive");
  const ComplexMatrix pq = p.matrix() * q.matrix();
  Eigen::JacobiSVD<ComplexMatrix> svd(pq, Eigen::ComputeFullU);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = rank_rel * (1.0 + sigma(0));
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  return projector_onto(svd.matrixU().leftCols(rank), p.dim());
}

std::variant<EquivWitness, NotClose> proximity_equiv_check(const MatElement& p, const MatElement& q,
                                                           Tolerance tol) {
  require_same_dim(p, q);
  require_projection(p, tol, "proximity_equiv_check: p");
  require_projection(q, tol, "proximity_equiv_check: q");
  const double distance = op_norm(p - q);
  if (distance < 1.0 && projection_rank(p) == projection_rank(q)) return mvn_witness(p, q, tol);
  return NotClose{distance};
}

}  // namespace cstar
