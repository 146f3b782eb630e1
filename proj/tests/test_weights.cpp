#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cstar/weights.hpp"
#include "support/oracle.hpp"

using namespace cstar;
using oracle::Mat;

namespace {

const double inf = std::numeric_limits<double>::infinity();

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const PreconditionError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a PreconditionError";
  return ErrorCode::invalid_argument;
}

Weight random_weight(oracle::Rng& rng, Index d) {
  switch (rng.integer(0, 3)) {
    case 0: return Weight::density(MatElement::identity(d));
    case 1: return Weight::density(MatElement(rng.projection(d, rng.integer(1, static_cast<int>(d)))));
    default: return Weight::density(MatElement(rng.positive(d)));
  }
}

// Direct evaluation through the density, bypassing the Jordan split.
Complex direct(const Weight& w, const MatElement& a) { return (w.density_matrix() * a).trace(); }

}  // namespace

TEST(WeightEval, Examples) {
  EXPECT_NEAR(weight_eval(Weight::density(MatElement::identity(2)), MatElement::identity(2)), 2.0, 1e-15);
  const Weight vs = Weight::density(MatElement::diagonal({1, 0}));
  EXPECT_NEAR(weight_eval(vs, MatElement::diagonal({3, 7})), 3.0, 1e-15);
  EXPECT_EQ(weight_eval(Weight::infinite(), MatElement::diagonal({1, 0})), inf);
  EXPECT_EQ(weight_eval(Weight::infinite(), MatElement::zero(2)), 0.0);

  EXPECT_EQ(code_of([&] { weight_eval(vs, MatElement::diagonal({-1, 1})); }), ErrorCode::not_positive);
  EXPECT_EQ(code_of([] { Weight::density(MatElement::diagonal({-1, 1})); }), ErrorCode::not_positive);
  EXPECT_EQ(code_of([] { Weight::infinite().density_matrix(); }), ErrorCode::infinite_weight);
}

TEST(WeightEval, AdditiveAndHomogeneous) {
  oracle::Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = rng.integer(1, 10);
    const Weight w = random_weight(rng, d);
    const MatElement a(rng.positive(d)), b(rng.positive(d));
    const double t = rng.uniform(0, 5);
    const double scale = 1 + weight_eval(w, a) + weight_eval(w, b);
    EXPECT_NEAR(weight_eval(w, a + b), weight_eval(w, a) + weight_eval(w, b), 1e-12 * scale);
    EXPECT_NEAR(weight_eval(w, a * t), t * weight_eval(w, a), 1e-12 * scale * (1 + t));
    EXPECT_GE(weight_eval(w, a), -1e-10);
  }
}

TEST(WeightExtend, Examples) {
  const Weight tr = Weight::density(MatElement::identity(2));
  const Complex nil = weight_extend_eval(tr, MatElement::from_rows({{0, 1}, {0, 0}}));
  EXPECT_LE(std::abs(nil), 1e-15);
  EXPECT_LE(std::abs(weight_extend_eval(tr, MatElement::identity(2)) - 2.0), 1e-15);
  const Weight vs = Weight::density(MatElement::diagonal({1, 0}));
  EXPECT_LE(std::abs(weight_extend_eval(vs, MatElement::identity(2) * Complex(0, 1)) - Complex(0, 1)), 1e-15);
  EXPECT_EQ(code_of([] { weight_extend_eval(Weight::infinite(), MatElement::identity(2)); }),
            ErrorCode::infinite_weight);
}

TEST(WeightExtend, AgreesWithDensityAndIsSelfAdjoint) {
  oracle::Rng rng(62);
  for (int trial = 0; trial < 500; ++trial) {
    const Index d = rng.integer(1, 12);
    const Weight w = random_weight(rng, d);
    const MatElement a(rng.complex_matrix(d));
    const Complex x = weight_extend_eval(w, a);
    const double scale = 1 + op_norm(w.density_matrix()) * op_norm(a) * static_cast<double>(d);
    EXPECT_LE(std::abs(x - direct(w, a)), 1e-9 * scale);
    EXPECT_LE(std::abs(weight_extend_eval(w, a.adjoint()) - std::conj(x)), 1e-10 * scale);
  }
}

TEST(ClassifyWeight, Examples) {
  const WeightFlags normalized = classify_weight(Weight::density(MatElement::identity(3) * 0.5 * (2.0 / 3)));
  EXPECT_TRUE(normalized.faithful);
  EXPECT_TRUE(normalized.state);
  EXPECT_TRUE(normalized.trace);

  const WeightFlags vs = classify_weight(Weight::density(MatElement::diagonal({1, 0, 0})));
  EXPECT_FALSE(vs.faithful);
  EXPECT_TRUE(vs.state);
  EXPECT_FALSE(vs.trace);

  const WeightFlags d12 = classify_weight(Weight::density(MatElement::diagonal({1, 2})));
  EXPECT_TRUE(d12.faithful);
  EXPECT_FALSE(d12.state);
  EXPECT_FALSE(d12.trace);

  const WeightFlags sentinel = classify_weight(Weight::infinite());
  EXPECT_TRUE(sentinel.faithful);
  EXPECT_FALSE(sentinel.state);
  EXPECT_TRUE(sentinel.trace);
}

TEST(ClassifyWeight, FlagsMatchDefinitionalTests) {
  oracle::Rng rng(63);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = rng.integer(2, 8);
    MatElement h = MatElement::identity(d);
    switch (trial % 4) {
      case 0: h = MatElement::identity(d) * rng.uniform(0.1, 3); break;
      case 1: h = MatElement(rng.projection(d, rng.integer(1, static_cast<int>(d) - 1))); break;
      case 2: h = MatElement(rng.positive(d)); break;
      default: {
        const MatElement p(rng.positive(d));
        h = p * (1.0 / p.trace().real());
      }
    }
    const Weight w = Weight::density(h);
    const WeightFlags f = classify_weight(w);

    bool commutes = true;
    for (int k = 0; k < 20; ++k) {
      const MatElement a(rng.complex_matrix(d));
      const double lhs = weight_eval(w, a * a.adjoint()), rhs = weight_eval(w, a.adjoint() * a);
      if (std::abs(lhs - rhs) > 1e-8 * (1 + std::abs(lhs))) commutes = false;
    }
    EXPECT_EQ(f.trace, commutes);

    // Faithfulness fails exactly on the kernel of h.
    const oracle::Eigenpairs e = oracle::jacobi_eigen(h.matrix());
    const Eigen::VectorXcd v = e.vectors.col(0);
    const double on_kernel = weight_eval(w, MatElement(v * v.adjoint()));
    EXPECT_EQ(f.faithful, on_kernel > 1e-8);

    EXPECT_EQ(f.state, std::abs(weight_eval(w, MatElement::identity(d)) - 1.0) <= 1e-10);
    if (f.trace) {
      const double c = h.trace().real() / static_cast<double>(d);
      EXPECT_LE(op_norm(h - MatElement::identity(d) * c), 1e-10);
    }
  }
}

TEST(LeqN, Examples) {
  const LeqNResult order = leq_n(MatElement::diagonal({0, 1}), MatElement::diagonal({1, 2}), 1);
  EXPECT_TRUE(order.holds);
  ASSERT_TRUE(order.witness.has_value());
  EXPECT_EQ(op_norm(order.witness->first) + op_norm(order.witness->second), 0.0);

  const LeqNResult close = leq_n(MatElement::diagonal({1, 0}), MatElement::diagonal({0.95, 0.05}), 10);
  EXPECT_TRUE(close.holds);
  ASSERT_TRUE(close.witness.has_value());
  EXPECT_EQ(op_norm(close.witness->first), 0.0);
  EXPECT_LE(op_norm(close.witness->second - MatElement::identity(2) * 0.1), 1e-16);

  const LeqNResult far = leq_n(MatElement::diagonal({1, 0}), MatElement::zero(2), 10);
  EXPECT_FALSE(far.holds);
  EXPECT_FALSE(far.witness.has_value());

  EXPECT_EQ(code_of([] { leq_n(MatElement::unit(2, 1, 2), MatElement::zero(2), 1); }), ErrorCode::not_self_adjoint);
  EXPECT_EQ(code_of([] { leq_n(MatElement::zero(2), MatElement::zero(2), 0); }), ErrorCode::invalid_argument);
}

TEST(LeqN, WitnessIsValid) {
  oracle::Rng rng(64);
  for (int trial = 0; trial < 300; ++trial) {
    const Index d = rng.integer(1, 10);
    const MatElement a(rng.hermitian(d)), b(rng.hermitian(d) * 0.1 + a.matrix());
    const int n = rng.integer(1, 100);
    const LeqNResult r = leq_n(a, b, n);
    EXPECT_EQ(r.holds, oracle::lambda_min((b - a).matrix()) >= -1.0 / n - 1e-10);
    if (r.holds) {
      const auto& [a1, b1] = *r.witness;
      EXPECT_LE(op_norm(a1), 1.0 / n + 1e-15);
      EXPECT_LE(op_norm(b1), 1.0 / n + 1e-15);
      EXPECT_GE(oracle::lambda_min((b + b1 - a - a1).matrix()), -1e-10);
    }
  }
}

TEST(WeightInvariants, NormBoundAndFiniteDichotomy) {
  oracle::Rng rng(65);
  for (int trial = 0; trial < 500; ++trial) {
    const Index d = rng.integer(1, 12);
    const Weight w = random_weight(rng, d);
    const MatElement a(rng.positive(d));
    const double value = weight_eval(w, a);
    EXPECT_LE(value, weight_eval(w, MatElement::identity(d)) * op_norm(a) + 1e-9 * (1 + value));
    EXPECT_TRUE(std::isfinite(value));
    EXPECT_EQ(weight_eval(Weight::infinite(), a), inf);
  }
}

TEST(WeightInvariants, LipschitzModulus) {
  oracle::Rng rng(66);
  for (int trial = 0; trial < 500; ++trial) {
    const Index d = rng.integer(1, 12);
    const Weight w = random_weight(rng, d);
    const MatElement a(rng.hermitian(d)), b(rng.hermitian(d));
    const double theta1 = weight_eval(w, MatElement::identity(d));
    EXPECT_LE(std::abs(weight_extend_eval(w, a) - weight_extend_eval(w, b)),
              2 * theta1 * op_norm(a - b) + 1e-9 * (1 + theta1));
  }
}

TEST(WeightInvariants, Monotone) {
  oracle::Rng rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    const Index d = rng.integer(1, 10);
    const Weight w = random_weight(rng, d);
    const MatElement a(rng.positive(d));
    const MatElement b = a + MatElement(rng.positive(d));
    ASSERT_TRUE(loewner_leq(a, b, 1e-9 * (1 + op_norm(b))));
    EXPECT_LE(weight_eval(w, a), weight_eval(w, b) + 1e-10 * (1 + weight_eval(w, b)));
  }
}

TEST(WeightInvariants, FiniteDirectedFamilyAttainsMax) {
  oracle::Rng rng(68);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = rng.integer(1, 8);
    const Weight w = random_weight(rng, d);
    // A chain a_0 <= a_1 <= ... is directed with maximum the last element.
    std::vector<MatElement> family{MatElement(rng.positive(d))};
    for (int k = 0; k < 6; ++k) family.push_back(family.back() + MatElement(rng.positive(d)));
    double best = -inf;
    for (const auto& f : family) best = std::max(best, weight_eval(w, f));
    EXPECT_NEAR(weight_eval(w, family.back()), best, 1e-12 * (1 + best));
  }
}

TEST(WeightInvariants, LeqNLadder) {
  oracle::Rng rng(69);
  const std::vector<int> ladder = {1, 10, 100, 1000, 10000, 100000, 1000000};
  for (int trial = 0; trial < 300; ++trial) {
    const Index d = rng.integer(1, 8);
    const MatElement a(rng.hermitian(d));
    const bool ordered = trial % 2 == 0;
    // Either b - a is positive, or its least eigenvalue is well below -1e-6.
    MatElement b = a + MatElement(rng.positive(d));
    if (!ordered) {
      const Eigen::VectorXcd v = rng.unitary(d).col(0);
      b = b - MatElement(v * v.adjoint()) * (op_norm(b - a) + rng.uniform(1e-5, 1));
    }
    ASSERT_EQ(loewner_leq(a, b, 0.0), ordered);
    bool all = true;
    for (int n : ladder) {
      const bool h = leq_n(a, b, n).holds;
      all = all && h;
      if (h) EXPECT_LE(infinitesimal_gap(a, b), 1.0 / n + 1e-10);
    }
    EXPECT_EQ(all, ordered);
  }
}

TEST(WeightInvariants, LeqNMatchesEigenvalueTestOnGrid) {
  const std::vector<double> grid = {-1.0, -0.5, -0.1, -0.05, -0.01, 0.0, 0.01, 0.5, 1.0};
  for (int n : {1, 10, 100}) {
    for (double a1 : grid)
      for (double a2 : grid)
        for (double b1 : grid)
          for (double b2 : grid) {
            const MatElement a = MatElement::diagonal({a1, a2}), b = MatElement::diagonal({b1, b2});
            const bool expected = std::min(b1 - a1, b2 - a2) >= -1.0 / n - 1e-10;
            EXPECT_EQ(leq_n(a, b, n).holds, expected);
          }
  }
}
