#pragma once

// Finite truncations of matrix sequences. A designated tail of each sequence
// stands in for "all sufficiently large indices"; certificates are evidence
// at truncation scale, not proofs about the infinite sequence.

#include <optional>
#include <string>
#include <vector>

#include "cstar/matrix.hpp"
#include "cstar/projection_geometry.hpp"

namespace cstar {

class MatrixSequence {
 public:
  /// Requires N >= 2 entries of a common dimension and tail_fraction in (0, 1].
  explicit MatrixSequence(std::vector<MatElement> entries, double tail_fraction = 0.5);

  Index dim() const noexcept { return entries_.front().dim(); }
  std::size_t size() const noexcept { return entries_.size(); }
  double tail_fraction() const noexcept { return tail_fraction_; }
  const std::vector<MatElement>& entries() const noexcept { return entries_; }
  /// 1-based access, matching the sequence index n.
  const MatElement& at(std::size_t n) const { return entries_.at(n - 1); }

  /// First 1-based index of the tail: N - ceil(tail_fraction * N) + 1.
  std::size_t tail_begin() const noexcept;

 private:
  std::vector<MatElement> entries_;
  double tail_fraction_;
};

/// delta_n <= scale * n^{-exponent}, least-squares fit in log-log over the tail.
struct DecayFit {
  double scale;
  double exponent;
};

struct TailRetraction {
  std::size_t index;
  std::optional<RetractionResult> retraction;
  Index rank = 0;
};

struct ApsCertificate {
  double threshold = 0.0;
  std::size_t tail_begin = 1;
  std::vector<double> defects;  // defects[n-1] = projection_defect(a_n)
  bool certified = false;
  std::optional<DecayFit> fitted_decay;
  std::vector<TailRetraction> nearest_projections;
  std::vector<std::string> diagnostics;
};

/// Certified iff every tail defect is <= threshold, the tail maximum does not
/// exceed the head maximum, every tail retraction succeeds and the tail
/// retraction rank is constant.
ApsCertificate certify_aps(const MatrixSequence& seq, double threshold);

/// Certificates for {u_n u_n*} (range side) and {u_n* u_n} (source side).
struct ApisCertificate {
  ApsCertificate range_side;
  ApsCertificate source_side;
  bool certified = false;
};

ApisCertificate certify_apis(const MatrixSequence& seq, double threshold);

struct SimATerm {
  std::size_t index;
  MatElement u;  // u u* = p_n (from seqA), u* u = q_n (from seqB)
  double residual;
  double distance_a;
  double distance_b;
};

struct SimAWitness {
  std::vector<SimATerm> terms;
  double max_residual = 0.0;
  bool success = false;
};

/// Tail witnesses for {a_n} ~_A {b_n}. Throws not_aps when either input fails
/// certification and rank_mismatch when tail retraction ranks differ.
SimAWitness sim_a_witness(const MatrixSequence& seq_a, const MatrixSequence& seq_b, double threshold);

struct ThresholdIndexResult {
  std::size_t n = 0;
  std::vector<MatElement> projections;  // nearby projections for m = n+1..N
};

/// Least n such that every a_m with m > n retracts to a projection at
/// distance < epsilon. Throws no_index_within_truncation when a_N does not.
ThresholdIndexResult threshold_index(const MatrixSequence& seq, double epsilon);

enum class InfinitenessVerdict {
  hypothesis_violated,     // some a_n equals the identity
  not_equivalent,          // tail ranks differ from full rank
  equivalent_via_identity  // equivalent, but only because the tail retracts to 1
};

struct InfinitenessReport {
  bool hypothesis_holds = false;
  std::vector<std::size_t> identity_indices;
  bool equivalent_to_identity = false;
  std::optional<std::size_t> first_mismatch;
  std::vector<Index> tail_ranks;
  Index full_rank = 0;
  bool retractions_are_identity = false;
  InfinitenessVerdict verdict = InfinitenessVerdict::not_equivalent;
  std::string summary;
};

/// Tests {a_n} ~_A {1} and reports where the finite-dimensional obstruction
/// shows up. Throws not_aps when seq_a is not certified at threshold.
InfinitenessReport infiniteness_probe(const MatrixSequence& seq_a, double threshold);

std::string_view to_string(InfinitenessVerdict v) noexcept;

}  // namespace cstar
