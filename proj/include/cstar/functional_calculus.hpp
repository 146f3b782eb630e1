#pragma once

// Continuous and step functional calculus for self-adjoint matrices,
// spectral projections and the greedy spectral coarsening into a finite
// combination of mutually orthogonal projections.

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "cstar/matrix.hpp"

namespace cstar {

/// Eigenvalues with algebraic multiplicity, sorted by (real, imag).
struct Spectrum {
  std::vector<Complex> eigenvalues;
  bool is_real = false;

  /// Largest modulus.
  double spectral_radius() const;
  /// Distinct values (up to tol) with their multiplicities.
  std::vector<std::pair<Complex, std::size_t>> grouped(double tol) const;
};

Spectrum spectrum(const MatElement& a);

/// Symmetric Hausdorff distance between two finite point sets in the plane.
double hausdorff_distance(const Spectrum& x, const Spectrum& y);

struct SpectralCluster {
  double lambda;          // multiplicity-weighted mean of the merged eigenvalues
  MatElement projection;  // spectral projection onto the cluster's eigenspace
  std::size_t multiplicity;
};

struct SpectralDecomposition {
  std::vector<SpectralCluster> clusters;
  double cluster_tol = 0.0;

  MatElement reconstruct() const;
};

/// Consecutive sorted eigenvalues no further apart than cluster_tol are merged.
SpectralDecomposition spectral_decompose(const MatElement& a, double cluster_tol, Tolerance tol = {});

/// Closed family of scalar functions that can cross the CLI boundary.
class FnDescriptor {
 public:
  enum class Kind { identity, abs, pos_part, neg_part, sqrt, power, indicator, piecewise_linear };

  static FnDescriptor identity() { return FnDescriptor(Kind::identity); }
  static FnDescriptor abs() { return FnDescriptor(Kind::abs); }
  static FnDescriptor pos_part() { return FnDescriptor(Kind::pos_part); }
  static FnDescriptor neg_part() { return FnDescriptor(Kind::neg_part); }
  static FnDescriptor sqrt() { return FnDescriptor(Kind::sqrt); }
  static FnDescriptor power(double r);
  /// Indicator of the half-open interval [lo, hi); infinite bounds allowed.
  static FnDescriptor indicator(double lo, double hi = std::numeric_limits<double>::infinity());
  /// Linear interpolation through points with strictly increasing abscissae;
  /// undefined outside [first.t, last.t].
  static FnDescriptor piecewise_linear(std::vector<std::pair<double, double>> points);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }

  /// Evaluates at t. Points within domain_tol of the domain boundary are
  /// snapped onto it; anything further out throws function_undefined.
  double operator()(double t, double domain_tol = 0.0) const;

 private:
  explicit FnDescriptor(Kind k) : kind_(k) {}

  Kind kind_;
  double exponent_ = 1.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<std::pair<double, double>> points_;
};

/// sum_i f(lambda_i) P_i over the eigen-decomposition of a.
MatElement apply_function(const MatElement& a, const FnDescriptor& f, Tolerance tol = {});

/// Same, for an arbitrary real scalar function; the caller owns domain checks.
MatElement apply_scalar(const MatElement& a, const std::function<double(double)>& f, Tolerance tol = {});

/// E([lo, hi)) for the self-adjoint a.
MatElement spectral_projector(const MatElement& a, double lo,
                              double hi = std::numeric_limits<double>::infinity(), Tolerance tol = {});

struct PStarTerm {
  double gamma;
  MatElement q;
};

/// Step approximation sum_i gamma_i q_i with mutually orthogonal projections.
struct PStarApprox {
  int n = 1;
  std::vector<PStarTerm> terms;
  double achieved_error = 0.0;

  MatElement reconstruct() const;
};

/// Greedy coarsening: eigenvalues ascend; each one joins the current level
/// when it lies within 1/n of that level's anchor value, otherwise it starts
/// a new level. Guarantees ||a - sum gamma_i q_i|| <= 1/n.
PStarApprox pstar_approximate(const MatElement& a, int n, Tolerance tol = {});

}  // namespace cstar
