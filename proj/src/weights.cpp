#include "cstar/weights.hpp"

#include <cmath>
#include <limits>

namespace cstar {

namespace {

constexpr double kExactTol = 1e-10;

}  // namespace

Weight Weight::density(MatElement h, Tolerance tol) {
  require_positive(h, tol, "weight density");
  return Weight(std::move(h));
}

const MatElement& Weight::density_matrix() const {
  if (!h_) fail(ErrorCode::infinite_weight, "the infinite weight has no density");
  return *h_;
}

double weight_eval(const Weight& theta, const MatElement& a, Tolerance tol) {
  require_positive(a, tol, "weight_eval: argument");
  if (theta.is_infinite()) {
    return op_norm(a) <= resolve_tolerance(tol, a) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const MatElement& h = theta.density_matrix();
  require_same_dim(h, a);
  return (h * a).trace().real();
}

Complex weight_extend_eval(const Weight& theta, const MatElement& a) {
  if (theta.is_infinite()) fail(ErrorCode::infinite_weight, "extension needs theta(1) < infinity");
  const JordanParts j = jordan_decompose(a);
  const double re = weight_eval(theta, j.pos_real) - weight_eval(theta, j.neg_real);
  const double im = weight_eval(theta, j.pos_imag) - weight_eval(theta, j.neg_imag);
  return {re, im};
}

WeightFlags classify_weight(const Weight& theta, Tolerance tol) {
  if (theta.is_infinite()) {
    // theta(a) = 0 only at a = 0; aa* and a*a vanish together; theta(1) = inf.
    return {true, false, true};
  }
  const MatElement& h = theta.density_matrix();
  const double t = resolve_tolerance(tol, h);
  const Index d = h.dim();
  const double tr = h.trace().real();
  WeightFlags f;
  f.faithful = hermitian_eigen(h).values(0) > t;
  f.state = std::abs(tr - 1.0) <= kExactTol;
  f.trace = op_norm(h - Complex(tr / static_cast<double>(d)) * MatElement::identity(d)) <= kExactTol;
  return f;
}

LeqNResult leq_n(const MatElement& a, const MatElement& b, int n, Tolerance tol) {
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be positive");
  require_same_dim(a, b);
  require_self_adjoint(a, tol, "leq_n: a");
  require_self_adjoint(b, tol, "leq_n: b");
  const double step = 1.0 / static_cast<double>(n);
  const double lowest = hermitian_eigen(b - a).values(0);
  LeqNResult out;
  out.holds = lowest >= -step - kExactTol;
  if (out.holds) {
    const Index d = a.dim();
    const MatElement lift = lowest >= -kExactTol ? MatElement::zero(d) : Complex(step) * MatElement::identity(d);
    out.witness.emplace(MatElement::zero(d), lift);
  }
  return out;
}

}  // namespace cstar
