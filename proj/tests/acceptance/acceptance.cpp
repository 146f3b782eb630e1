// One line per acceptance criterion: PASS/FAIL, the measured worst case and
// the bound it was held to. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cstar/functional_calculus.hpp"
#include "cstar/hull_model.hpp"
#include "cstar/projection_geometry.hpp"
#include "cstar/weights.hpp"
#include "support/oracle.hpp"
#include "support/sequences.hpp"

using namespace cstar;
using oracle::Mat;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double dist(const MatElement& a, const MatElement& b) { return op_norm(a - b); }

std::vector<FnDescriptor> all_kinds() {
  return {FnDescriptor::identity(),
          FnDescriptor::abs(),
          FnDescriptor::pos_part(),
          FnDescriptor::neg_part(),
          FnDescriptor::sqrt(),
          FnDescriptor::power(1.5),
          FnDescriptor::indicator(-0.5, 1.0),
          FnDescriptor::piecewise_linear({{-20, 3}, {-1, 0}, {0.5, 2}, {20, -1}})};
}

bool nonnegative_domain(const FnDescriptor& f) {
  return f.kind() == FnDescriptor::Kind::sqrt || f.kind() == FnDescriptor::Kind::power;
}

Verdict functional_calculus_laws() {
  oracle::Rng rng(1001);
  const auto kinds = all_kinds();
  double hom = 0, iso = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Index d = rng.integer(2, 16);
    const MatElement a(rng.hermitian_with_norm(d, rng.uniform(0.5, 5)));
    // Kinds defined only on [0, inf) see the translate a + ||a||.
    const MatElement shifted = a + MatElement::identity(d) * op_norm(a);
    const auto sa = oracle::jacobi_eigen(a.matrix()).values;
    const auto ss = oracle::jacobi_eigen(shifted.matrix()).values;
    for (const auto& f : kinds) {
      for (const auto& g : kinds) {
        const MatElement& x = nonnegative_domain(f) || nonnegative_domain(g) ? shifted : a;
        const MatElement fx = apply_function(x, f), gx = apply_function(x, g);
        const MatElement prod = apply_scalar(x, [&](double t) { return f(t, 1e-8) * g(t, 1e-8); });
        const MatElement sum = apply_scalar(x, [&](double t) { return f(t, 1e-8) + g(t, 1e-8); });
        hom = std::max({hom, dist(prod, fx * gx), dist(sum, fx + gx)});
      }
      const auto& eig = nonnegative_domain(f) ? ss : sa;
      double sup = 0;
      for (double t : eig) sup = std::max(sup, std::abs(f(t, 1e-8)));
      iso = std::max(iso, std::abs(op_norm(apply_function(nonnegative_domain(f) ? shifted : a, f)) - sup));
    }
  }
  return {hom <= 1e-8 && iso <= 1e-8, fmt("homomorphism err %.2e, isometry err %.2e (bound 1e-8)", hom, iso)};
}

Verdict spectrum_continuity() {
  oracle::Rng rng(1002);
  double worst = -1;
  for (int trial = 0; trial < 500; ++trial) {
    const Index d = rng.integer(2, 16);
    const MatElement a(rng.hermitian(d));
    const MatElement e(rng.hermitian_with_norm(d, std::pow(10.0, rng.uniform(-8, 0))));
    worst = std::max(worst, hausdorff_distance(spectrum(a), spectrum(a + e)) - op_norm(e));
  }
  return {worst <= 1e-9, fmt("max(hausdorff - ||e||) = %.2e (bound 1e-9)", worst)};
}

Verdict pstar_bound() {
  oracle::Rng rng(1003);
  double excess = -1, cross = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = rng.integer(2, 16);
    const MatElement a(rng.hermitian(d) * rng.uniform(0.1, 3));
    for (int n : {1, 2, 5, 10, 100}) {
      const PStarApprox p = pstar_approximate(a, n);
      excess = std::max(excess, dist(a, p.reconstruct()) - 1.0 / n);
      for (std::size_t i = 0; i < p.terms.size(); ++i)
        for (std::size_t j = i + 1; j < p.terms.size(); ++j) cross = std::max(cross, op_norm(p.terms[i].q * p.terms[j].q));
    }
  }
  return {excess <= 1e-9 && cross <= 1e-9,
          fmt("max(||a - sum|| - 1/n) = %.2e, max ||q_i q_j|| = %.2e (bounds 1e-9)", excess, cross)};
}

Verdict retraction() {
  oracle::Rng rng(1004);
  const double deltas[] = {1e-2, 1e-3, 1e-4};
  int failures = 0;
  double worst_ratio = 0, worst_defect = 0, worst_oracle = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double delta = deltas[trial % 3];
    const Index d = rng.integer(2, 16);
    const MatElement a(rng.projection(d, rng.integer(0, static_cast<int>(d))) + rng.hermitian_with_norm(d, delta));
    try {
      const RetractionResult r = retract_projection(a);
      const double defect = projection_defect(r.output);
      const double gap = dist(r.output, MatElement(oracle::round_to_projection(a.matrix())));
      worst_ratio = std::max(worst_ratio, r.distance / delta);
      worst_defect = std::max(worst_defect, defect);
      worst_oracle = std::max(worst_oracle, gap);
      if (defect > 1e-10 || r.distance > 5 * delta || gap > 1e-9) ++failures;
    } catch (const PreconditionError&) {
      ++failures;
    }
  }
  return {failures == 0, fmt("failures %.0f/1000, max distance/delta %.3f, max defect %.2e", failures, worst_ratio,
                             worst_defect) +
                             fmt(", max gap to eigenvalue rounding %.2e", worst_oracle)};
}

Verdict partial_isometry_formula() {
  const MatElement e12 = MatElement::unit(2, 1, 2);
  const RetractionResult r = retract_partial_isometry(e12 * 1.01);
  const double off = dist(r.output, e12);
  const double defect = projection_defect(r.output.adjoint() * r.output);
  return {off <= 1e-12 && defect <= 1e-12,
          fmt("||u - e12|| = %.2e, projection defect of u*u = %.2e (bound 1e-12)", off, defect)};
}

Verdict equivalence_witnesses() {
  oracle::Rng rng(1006);
  int cases = 0, wrong = 0;
  double worst = 0;
  for (Index d = 2; d <= 6; ++d) {
    for (Index rp = 0; rp <= d; ++rp) {
      for (Index rq = 0; rq <= d; ++rq) {
        ++cases;
        const MatElement p(rng.projection(d, rp)), q(rng.projection(d, rq));
        try {
          const EquivWitness w = mvn_witness(p, q);
          worst = std::max({worst, w.left_defect, w.right_defect});
          if (rp != rq || w.left_defect > 1e-10 || w.right_defect > 1e-10) ++wrong;
        } catch (const PreconditionError& e) {
          if (rp == rq || e.code() != ErrorCode::rank_mismatch) ++wrong;
        }
      }
    }
  }
  return {wrong == 0, fmt("%.0f rank pairs, %.0f wrong, max defect %.2e (bound 1e-10)", cases, wrong, worst)};
}

Verdict orthogonality_repair_bound() {
  oracle::Rng rng(1007);
  double ortho = 0, ratio = 0;
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index d = rng.integer(2, 16);
    const Index k = rng.integer(1, static_cast<int>(d) / 2);
    const Index l = rng.integer(1, static_cast<int>(d - k));
    const double delta = rng.uniform(1e-6, 0.05);
    const auto [pm, qm] = rng.angled_pair(d, k, l, delta);
    const MatElement p(pm), q(qm);
    const double measured = op_norm(p * q);
    try {
      const OrthogonalPair r = orthogonality_repair(p, q);
      const double o = op_norm(r.p * r.q), x = dist(p, r.p) / measured;
      ortho = std::max(ortho, o);
      ratio = std::max(ratio, x);
      if (o > 1e-12 || x > 4) ++failures;
    } catch (const PreconditionError&) {
      ++failures;
    }
  }
  return {failures == 0,
          fmt("failures %.0f/1000, max ||p'q'|| = %.2e (bound 1e-12), max ||p - p'||/delta = %.3f (bound 4)", failures,
              ortho, ratio)};
}

Verdict weight_bound_and_extension() {
  oracle::Rng rng(1008);
  double bound = -1, ext = 0, adj = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Index d = rng.integer(1, 12);
    // States and unit-scale matrices: the bounds are absolute.
    const MatElement raw(rng.positive(d));
    const Weight w = Weight::density(raw * (1.0 / raw.trace().real()));
    const MatElement a(rng.positive(d));
    const MatElement pos = a * (rng.uniform(0.1, 4) / op_norm(a));
    bound = std::max(bound, weight_eval(w, pos) - weight_eval(w, MatElement::identity(d)) * op_norm(pos));
    MatElement m(rng.complex_matrix(d));
    m = m * (rng.uniform(0.1, 4) / op_norm(m));
    const Complex x = weight_extend_eval(w, m);
    ext = std::max(ext, std::abs(x - (w.density_matrix() * m).trace()));
    adj = std::max(adj, std::abs(weight_extend_eval(w, m.adjoint()) - std::conj(x)));
  }
  return {bound <= 1e-9 && ext <= 1e-9 && adj <= 1e-10,
          fmt("max(theta(a) - theta(1)||a||) = %.2e, extension vs density %.2e (1e-9), adjoint law %.2e (1e-10)", bound,
              ext, adj)};
}

Verdict leq_n_characterization() {
  int checks = 0, wrong = 0;
  std::vector<double> grid;
  for (int k = -8; k <= 8; ++k) grid.push_back(k / 8.0);
  for (int n : {1, 10, 100}) {
    for (double a1 : grid)
      for (double a2 : grid)
        for (double b1 : grid)
          for (double b2 : grid) {
            ++checks;
            const bool direct = std::min(b1 - a1, b2 - a2) >= -1.0 / n;
            if (leq_n(MatElement::diagonal({a1, a2}), MatElement::diagonal({b1, b2}), n).holds != direct) ++wrong;
          }
  }
  oracle::Rng rng(1009);
  for (int trial = 0; trial < 500; ++trial) {
    const Index d = rng.integer(1, 10);
    const MatElement a(rng.hermitian(d));
    const MatElement b = a + MatElement(rng.hermitian(d) * rng.uniform(0.001, 0.2));
    const double lmin = oracle::lambda_min((b - a).matrix());
    for (int n : {1, 10, 100}) {
      ++checks;
      if (leq_n(a, b, n).holds != (lmin >= -1.0 / n)) ++wrong;
    }
  }
  return {wrong == 0, fmt("%.0f checks (dyadic grid + random), %.0f disagreements", checks, wrong)};
}

Verdict hull_pipeline() {
  const ThresholdIndexResult r = threshold_index(fixtures::shrinking_projection(100), 0.1);
  double off = 0;
  for (const auto& p : r.projections) off = std::max(off, dist(p, MatElement::diagonal({1, 0})));
  const bool index_ok = r.n == 10 && r.projections.size() == 90 && off <= 1e-12;

  const MatrixSequence a = fixtures::rotated_projectors(100);
  const MatrixSequence b = fixtures::constant(100, MatElement::diagonal({0, 1}));
  const SimAWitness w = sim_a_witness(a, b, 0.1);
  bool decreasing = w.success && w.terms.size() >= 2;
  for (std::size_t k = 1; k < w.terms.size(); ++k) decreasing = decreasing && w.terms[k].residual < w.terms[k - 1].residual;
  const double first = w.terms.empty() ? 0 : w.terms.front().residual;
  const double last = w.terms.empty() ? 0 : w.terms.back().residual;
  return {index_ok && decreasing,
          fmt("threshold_index n = %.0f, residuals %.2e -> %.2e", static_cast<double>(r.n), first, last) +
              (decreasing ? " strictly decreasing" : " NOT decreasing")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"functional calculus laws", functional_calculus_laws},
      {"spectrum continuity", spectrum_continuity},
      {"pstar bound", pstar_bound},
      {"projection retraction", retraction},
      {"partial isometry formula", partial_isometry_formula},
      {"equivalence witnesses", equivalence_witnesses},
      {"orthogonality repair", orthogonality_repair_bound},
      {"weight bound and extension", weight_bound_and_extension},
      {"leq_n characterization", leq_n_characterization},
      {"sequence pipeline", hull_pipeline},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str(), secs);
    if (!v.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
