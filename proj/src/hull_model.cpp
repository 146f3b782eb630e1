#include "cstar/hull_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cstar {

MatrixSequence::MatrixSequence(std::vector<MatElement> entries, double tail_fraction)
    : entries_(std::move(entries)), tail_fraction_(tail_fraction) {
  if (entries_.size() < 2) fail(ErrorCode::invalid_argument, "a sequence needs at least two entries");
  if (!(tail_fraction_ > 0.0 && tail_fraction_ <= 1.0)) {
    fail(ErrorCode::invalid_argument, "tail_fraction must lie in (0, 1]");
  }
  for (const auto& e : entries_) require_same_dim(entries_.front(), e);
}

std::size_t MatrixSequence::tail_begin() const noexcept {
  const auto n = entries_.size();
  const auto tail = static_cast<std::size_t>(std::ceil(tail_fraction_ * static_cast<double>(n)));
  return n - std::clamp<std::size_t>(tail, 1, n) + 1;
}

namespace {

std::optional<DecayFit> fit_decay(const std::vector<double>& defects, std::size_t tail_begin) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = tail_begin; n <= defects.size(); ++n) {
    if (defects[n - 1] > 0.0) pts.emplace_back(std::log(static_cast<double>(n)), std::log(defects[n - 1]));
  }
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) return std::nullopt;
  const double slope = sxy / sxx;
  return DecayFit{std::exp(my - slope * mx), -slope};
}

void require_threshold(double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    fail(ErrorCode::invalid_argument, "threshold must be positive and finite");
  }
}

MatrixSequence derived_sequence(const MatrixSequence& seq, bool range_side) {
  std::vector<MatElement> out;
  out.reserve(seq.size());
  for (const auto& u : seq.entries()) out.push_back(range_side ? u * u.adjoint() : u.adjoint() * u);
  return MatrixSequence(std::move(out), seq.tail_fraction());
}

}  // namespace

ApsCertificate certify_aps(const MatrixSequence& seq, double threshold) {
  require_threshold(threshold);
  ApsCertificate cert;
  cert.threshold = threshold;
  cert.tail_begin = seq.tail_begin();
  cert.defects.reserve(seq.size());
  for (const auto& a : seq.entries()) cert.defects.push_back(projection_defect(a));

  double head_max = 0.0;
  double tail_max = 0.0;
  for (std::size_t n = 1; n <= seq.size(); ++n) {
    double& slot = n < cert.tail_begin ? head_max : tail_max;
    slot = std::max(slot, cert.defects[n - 1]);
  }
  bool ok = true;
  if (tail_max > threshold) {
    ok = false;
    cert.diagnostics.push_back("tail defect " + std::to_string(tail_max) + " exceeds threshold " +
                               std::to_string(threshold));
  }
  if (cert.tail_begin > 1 && tail_max > head_max) {
    ok = false;
    cert.diagnostics.push_back("tail maximum defect exceeds head maximum; no decay evidence");
  }

  std::optional<Index> rank;
  for (std::size_t n = cert.tail_begin; n <= seq.size(); ++n) {
    TailRetraction tr{n, std::nullopt, 0};
    if (cert.defects[n - 1] < 0.25) {
      tr.retraction = retract_projection(seq.at(n));
      tr.rank = projection_rank(tr.retraction->output);
      if (rank && *rank != tr.rank) {
        ok = false;
        cert.diagnostics.push_back("retraction rank changes inside the tail at n = " + std::to_string(n));
      }
      rank = tr.rank;
    } else {
      ok = false;
      cert.diagnostics.push_back("no certified spectral gap at n = " + std::to_string(n));
    }
    cert.nearest_projections.push_back(std::move(tr));
  }
  cert.fitted_decay = fit_decay(cert.defects, cert.tail_begin);
  cert.certified = ok;
  return cert;
}

ApisCertificate certify_apis(const MatrixSequence& seq, double threshold) {
  ApisCertificate cert{certify_aps(derived_sequence(seq, true), threshold),
                       certify_aps(derived_sequence(seq, false), threshold), false};
  cert.certified = cert.range_side.certified && cert.source_side.certified;
  return cert;
}

SimAWitness sim_a_witness(const MatrixSequence& seq_a, const MatrixSequence& seq_b, double threshold) {
  if (seq_a.size() != seq_b.size()) fail(ErrorCode::dimension_mismatch, "sequences differ in length");
  if (seq_a.dim() != seq_b.dim()) fail(ErrorCode::dimension_mismatch, "sequences differ in dimension");
  if (seq_a.tail_begin() != seq_b.tail_begin()) fail(ErrorCode::invalid_argument, "tails differ");
  const ApsCertificate ca = certify_aps(seq_a, threshold);
  const ApsCertificate cb = certify_aps(seq_b, threshold);
  if (!ca.certified) fail(ErrorCode::not_aps, "first sequence is not certified at this threshold");
  if (!cb.certified) fail(ErrorCode::not_aps, "second sequence is not certified at this threshold");

  SimAWitness out;
  for (std::size_t k = 0; k < ca.nearest_projections.size(); ++k) {
    const TailRetraction& ta = ca.nearest_projections[k];
    const TailRetraction& tb = cb.nearest_projections[k];
    if (ta.rank != tb.rank) {
      fail(ErrorCode::rank_mismatch, "at n = " + std::to_string(ta.index) + ": rank " +
                                         std::to_string(ta.rank) + " vs " + std::to_string(tb.rank));
    }
    const MatElement& p = ta.retraction->output;
    const MatElement& q = tb.retraction->output;
    MatElement u = mvn_witness(q, p).u;
    const double residual =
        op_norm(u * u.adjoint() - seq_a.at(ta.index)) + op_norm(u.adjoint() * u - seq_b.at(ta.index));
    out.max_residual = std::max(out.max_residual, residual);
    out.terms.push_back({ta.index, std::move(u), residual, ta.retraction->distance, tb.retraction->distance});
  }
  out.success = out.max_residual <= 2.0 * threshold;
  return out;
}

ThresholdIndexResult threshold_index(const MatrixSequence& seq, double epsilon) {
  if (!(epsilon > 0.0)) fail(ErrorCode::invalid_argument, "epsilon must be positive");
  const std::size_t N = seq.size();
  std::vector<MatElement> reversed;
  std::size_t n = N;
  // Walk down from N while a_n still retracts within epsilon.
  while (n >= 1) {
    const MatElement& a = seq.at(n);
    if (!(projection_defect(a) < 0.25)) break;
    RetractionResult r = retract_projection(a);
    if (!(r.distance < epsilon)) break;
    reversed.push_back(std::move(r.output));
    --n;
  }
  if (n == N) {
    fail(ErrorCode::no_index_within_truncation,
         "a_N has no projection within epsilon = " + std::to_string(epsilon));
  }
  return {n, std::vector<MatElement>(reversed.rbegin(), reversed.rend())};
}

std::string_view to_string(InfinitenessVerdict v) noexcept {
  switch (v) {
    case InfinitenessVerdict::hypothesis_violated: return "hypothesis_violated";
    case InfinitenessVerdict::not_equivalent: return "not_equivalent";
    case InfinitenessVerdict::equivalent_via_identity: return "equivalent_via_identity";
  }
  return "unknown";
}

InfinitenessReport infiniteness_probe(const MatrixSequence& seq_a, double threshold) {
  const ApsCertificate cert = certify_aps(seq_a, threshold);
  if (!cert.certified) fail(ErrorCode::not_aps, "sequence is not certified at this threshold");

  InfinitenessReport report;
  const Index d = seq_a.dim();
  const MatElement one = MatElement::identity(d);
  report.full_rank = d;
  for (std::size_t n = 1; n <= seq_a.size(); ++n) {
    const MatElement& a = seq_a.at(n);
    if (op_norm(a - one) <= default_tolerance(a)) report.identity_indices.push_back(n);
  }
  report.hypothesis_holds = report.identity_indices.empty();

  report.retractions_are_identity = true;
  Index mismatch_rank = d;
  for (const auto& tr : cert.nearest_projections) {
    report.tail_ranks.push_back(tr.rank);
    if (tr.rank != d && !report.first_mismatch) {
      report.retractions_are_identity = false;
      report.first_mismatch = tr.index;
      mismatch_rank = tr.rank;
    }
  }

  if (report.retractions_are_identity) {
    const MatrixSequence ones(std::vector<MatElement>(seq_a.size(), one), seq_a.tail_fraction());
    report.equivalent_to_identity = sim_a_witness(seq_a, ones, threshold).success;
  }

  if (!report.hypothesis_holds) {
    report.verdict = InfinitenessVerdict::hypothesis_violated;
    report.summary = "some a_n equals the identity, so the infiniteness criterion does not apply";
  } else if (!report.equivalent_to_identity) {
    report.verdict = InfinitenessVerdict::not_equivalent;
    report.summary = report.first_mismatch
                         ? "tail retraction rank " + std::to_string(mismatch_rank) +
                               " differs from full rank " + std::to_string(d) + " at n = " +
                               std::to_string(*report.first_mismatch) + "; not equivalent to the identity"
                         : "tail residuals too large; not equivalent to the identity";
  } else {
    report.verdict = InfinitenessVerdict::equivalent_via_identity;
    report.summary =
        "equivalent to the identity, but every tail retraction is the identity itself; no proper "
        "projection equivalent to 1 exists, so the matrix algebra is finite";
  }
  return report;
}

}  // namespace cstar
