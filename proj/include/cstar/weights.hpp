#pragma once

// Weights on the positive cone of M_d(C): a density h (theta(a) = tr(h a))
// or the sentinel that is infinite on every nonzero positive element.

#include <optional>
#include <utility>

#include "cstar/matrix.hpp"

namespace cstar {

class Weight {
 public:
  /// Requires h positive within tol.
  static Weight density(MatElement h, Tolerance tol = {});
  static Weight infinite() { return Weight(); }

  bool is_infinite() const noexcept { return !h_.has_value(); }
  /// Throws infinite_weight for the sentinel.
  const MatElement& density_matrix() const;

 private:
  Weight() = default;
  explicit Weight(MatElement h) : h_(std::move(h)) {}

  std::optional<MatElement> h_;
};

struct WeightFlags {
  bool faithful = false;
  bool state = false;
  bool trace = false;
};

/// theta(a) for positive a; +infinity for the sentinel unless a vanishes.
double weight_eval(const Weight& theta, const MatElement& a, Tolerance tol = {});

/// Unique linear extension via the Jordan decomposition:
/// (theta(b1) - theta(b2)) + i (theta(c1) - theta(c2)).
Complex weight_extend_eval(const Weight& theta, const MatElement& a);

WeightFlags classify_weight(const Weight& theta, Tolerance tol = {});

struct LeqNResult {
  bool holds = false;
  /// (a1, b1) with a + a1 <= b + b1 and ||a1||, ||b1|| <= 1/n.
  std::optional<std::pair<MatElement, MatElement>> witness;
};

/// a <=_n b, decided by lambda_min(b - a) >= -1/n with the canonical
/// witness (0, 0) when a <= b and (0, 1/n) otherwise.
LeqNResult leq_n(const MatElement& a, const MatElement& b, int n, Tolerance tol = {});

}  // namespace cstar
