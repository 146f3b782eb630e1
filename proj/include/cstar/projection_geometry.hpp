#pragma once

// Retraction of approximate projections and partial isometries onto exact
// ones, Murray-von Neumann witnesses, dominating lifts, orthogonality repair
// and range projections.

#include <variant>

#include "cstar/matrix.hpp"

namespace cstar {

struct RetractionResult {
  MatElement output;
  double distance;       // ||input - output||
  double input_defect;
};

/// Partial isometry u with left_defect = ||u*u - p||. For equivalence
/// witnesses right_defect = ||uu* - q||; for subordination witnesses it is
/// ||q uu* - uu*||, the defect of uu* <= q.
struct EquivWitness {
  MatElement u;
  double left_defect;
  double right_defect;
};

struct NotClose {
  double distance;
};

/// Orthonormal basis of ran(p), read off the Hermitian eigenvectors with
/// eigenvalue above 1/2 (deterministic eigensolver order).
ComplexMatrix range_basis(const MatElement& p);
/// Number of eigenvalues of the Hermitian part above 1/2.
Index projection_rank(const MatElement& p);

/// ||a - a*|| + ||a^2 - a||.
double projection_defect(const MatElement& a);

/// Nearest exact projection E_{(a+a*)/2}([1/2, inf)). Requires defect < 1/4.
RetractionResult retract_projection(const MatElement& a);

/// u = v phi(v*v) with phi = 0 on [0, 1/2] and t^{-1/2} above. Requires the
/// spectrum of v*v to avoid [1/4, 3/4].
RetractionResult retract_partial_isometry(const MatElement& v);

/// u with u*u = p and uu* = q; throws rank_mismatch when rank p != rank q.
EquivWitness mvn_witness(const MatElement& p, const MatElement& q, Tolerance tol = {});

/// u with u*u = p and uu* <= q; throws rank_mismatch when rank p > rank q.
EquivWitness subordination_witness(const MatElement& p, const MatElement& q, Tolerance tol = {});

/// Exact projection p >= q close to p0. Requires ||p0 q - q|| < 1/4.
MatElement dominating_lift(const MatElement& q, const MatElement& p0, Tolerance tol = {});

struct OrthogonalPair {
  MatElement p;
  MatElement q;
};

/// Replaces p by the projection onto (1 - q) ran(p), leaving q unchanged.
/// Requires ||pq|| < 0.1.
OrthogonalPair orthogonality_repair(const MatElement& p, const MatElement& q, Tolerance tol = {});

/// Projection onto the column space of pq. Singular values at or below
/// rank_rel * (1 + ||pq||) count as zero.
MatElement range_projection_of_product(const MatElement& p, const MatElement& q, Tolerance tol = {},
                                       double rank_rel = 1e-10);

/// Witness when ||p - q|| < 1, otherwise the distance.
std::variant<EquivWitness, NotClose> proximity_equiv_check(const MatElement& p, const MatElement& q,
                                                           Tolerance tol = {});

}  // namespace cstar
