#include "cstar/functional_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cstar {

double Spectrum::spectral_radius() const {
  double r = 0.0;
  for (const Complex& z : eigenvalues) r = std::max(r, std::abs(z));
  return r;
}

std::vector<std::pair<Complex, std::size_t>> Spectrum::grouped(double tol) const {
  std::vector<std::pair<Complex, std::size_t>> out;
  for (const Complex& z : eigenvalues) {
    if (!out.empty() && std::abs(out.back().first - z) <= tol) {
      ++out.back().second;
    } else {
      out.emplace_back(z, 1);
    }
  }
  return out;
}

Spectrum spectrum(const MatElement& a) {
  Spectrum s;
  if (is_self_adjoint(a)) {
    const HermitianEigen e = hermitian_eigen(a);
    s.is_real = true;
    s.eigenvalues.reserve(static_cast<std::size_t>(e.values.size()));
    for (Index i = 0; i < e.values.size(); ++i) s.eigenvalues.emplace_back(e.values(i), 0.0);
    return s;
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a.matrix(), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::invalid_argument, "eigensolver did not converge");
  }
  const Eigen::VectorXcd& values = solver.eigenvalues();
  s.eigenvalues.assign(values.data(), values.data() + values.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const Complex& x, const Complex& y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  return s;
}

double hausdorff_distance(const Spectrum& x, const Spectrum& y) {
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (const Complex& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(x.eigenvalues, y.eigenvalues), directed(y.eigenvalues, x.eigenvalues));
}

MatElement SpectralDecomposition::reconstruct() const {
  if (clusters.empty()) fail(ErrorCode::invalid_argument, "empty decomposition");
  ComplexMatrix m = ComplexMatrix::Zero(clusters.front().projection.dim(), clusters.front().projection.dim());
  for (const auto& c : clusters) m += c.lambda * c.projection.matrix();
  return MatElement(std::move(m));
}

SpectralDecomposition spectral_decompose(const MatElement& a, double cluster_tol, Tolerance tol) {
  if (!(cluster_tol >= 0.0)) fail(ErrorCode::invalid_argument, "cluster_tol must be nonnegative");
  require_self_adjoint(a, tol, "spectral_decompose");
  const HermitianEigen e = hermitian_eigen(a);
  const Index d = a.dim();

  SpectralDecomposition out;
  out.cluster_tol = cluster_tol;
  Index start = 0;
  while (start < d) {
    Index end = start + 1;
    while (end < d && e.values(end) - e.values(end - 1) <= cluster_tol) ++end;
    const Index count = end - start;
    const auto block = e.vectors.middleCols(start, count);
    out.clusters.push_back({e.values.segment(start, count).mean(),
                            from_eigen(block, Eigen::VectorXd::Ones(count)),
                            static_cast<std::size_t>(count)});
    start = end;
  }
  return out;
}

FnDescriptor FnDescriptor::power(double r) {
  if (!std::isfinite(r)) fail(ErrorCode::invalid_argument, "power exponent must be finite");
  FnDescriptor f(Kind::power);
  f.exponent_ = r;
  return f;
}

FnDescriptor FnDescriptor::indicator(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    fail(ErrorCode::invalid_argument, "indicator requires lo < hi");
  }
  FnDescriptor f(Kind::indicator);
  f.lo_ = lo;
  f.hi_ = hi;
  return f;
}

FnDescriptor FnDescriptor::piecewise_linear(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) fail(ErrorCode::invalid_argument, "piecewise_linear needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second)) {
      fail(ErrorCode::invalid_argument, "piecewise_linear points must be finite");
    }
    if (i > 0 && !(points[i].first > points[i - 1].first)) {
      fail(ErrorCode::invalid_argument, "piecewise_linear abscissae must strictly increase");
    }
  }
  FnDescriptor f(Kind::piecewise_linear);
  f.points_ = std::move(points);
  return f;
}

double FnDescriptor::operator()(double t, double domain_tol) const {
  auto undefined = [&](const char* why) {
    fail(ErrorCode::function_undefined, std::string(why) + " at t = " + std::to_string(t));
  };
  switch (kind_) {
    case Kind::identity: return t;
    case Kind::abs: return std::abs(t);
    case Kind::pos_part: return std::max(t, 0.0);
    case Kind::neg_part: return -std::min(t, 0.0);
    case Kind::sqrt:
    case Kind::power: {
      const double r = kind_ == Kind::sqrt ? 0.5 : exponent_;
      if (t < -domain_tol) undefined("fractional power of a negative eigenvalue");
      const double s = std::max(t, 0.0);
      if (r == 0.0) return 1.0;
      if (r < 0.0 && s <= domain_tol) undefined("negative power of a vanishing eigenvalue");
      return std::pow(s, r);
    }
    case Kind::indicator: return (t >= lo_ && t < hi_) ? 1.0 : 0.0;
    case Kind::piecewise_linear: {
      const auto& first = points_.front();
      const auto& last = points_.back();
      if (t < first.first - domain_tol || t > last.first + domain_tol) {
        undefined("outside the piecewise-linear domain");
      }
      if (t <= first.first) return first.second;
      if (t >= last.first) return last.second;
      const auto upper = std::upper_bound(points_.begin(), points_.end(), t,
                                          [](double v, const auto& p) { return v < p.first; });
      const auto lower = upper - 1;
      const double w = (t - lower->first) / (upper->first - lower->first);
      return (1.0 - w) * lower->second + w * upper->second;
    }
  }
  return 0.0;
}

MatElement apply_scalar(const MatElement& a, const std::function<double(double)>& f, Tolerance tol) {
  require_self_adjoint(a, tol, "apply_function");
  const HermitianEigen e = hermitian_eigen(a);
  Eigen::VectorXd values(e.values.size());
  for (Index i = 0; i < values.size(); ++i) values(i) = f(e.values(i));
  return from_eigen(e.vectors, values);
}

MatElement apply_function(const MatElement& a, const FnDescriptor& f, Tolerance tol) {
  const double domain_tol = resolve_tolerance(tol, a);
  return apply_scalar(a, [&](double t) { return f(t, domain_tol); }, domain_tol);
}

MatElement spectral_projector(const MatElement& a, double lo, double hi, Tolerance tol) {
  return apply_function(a, FnDescriptor::indicator(lo, hi), tol);
}

MatElement PStarApprox::reconstruct() const {
  if (terms.empty()) fail(ErrorCode::invalid_argument, "empty approximation");
  ComplexMatrix m = ComplexMatrix::Zero(terms.front().q.dim(), terms.front().q.dim());
  for (const auto& t : terms) m += t.gamma * t.q.matrix();
  return MatElement(std::move(m));
}

PStarApprox pstar_approximate(const MatElement& a, int n, Tolerance tol) {
  if (n < 1) fail(ErrorCode::invalid_argument, "step parameter n must be positive");
  require_self_adjoint(a, tol, "pstar_approximate");
  const HermitianEigen e = hermitian_eigen(a);
  const double step = 1.0 / static_cast<double>(n);
  const Index d = a.dim();

  // beta_0 = alpha_0; beta_i = beta_{i-1} if |beta_{i-1} - alpha_i| <= 1/n else alpha_i.
  std::vector<double> beta(static_cast<std::size_t>(d));
  beta[0] = e.values(0);
  for (Index i = 1; i < d; ++i) {
    const double prev = beta[static_cast<std::size_t>(i - 1)];
    beta[static_cast<std::size_t>(i)] = std::abs(prev - e.values(i)) <= step ? prev : e.values(i);
  }

  PStarApprox out;
  out.n = n;
  Index start = 0;
  while (start < d) {
    Index end = start + 1;
    while (end < d && beta[static_cast<std::size_t>(end)] == beta[static_cast<std::size_t>(start)]) ++end;
    const Index count = end - start;
    out.terms.push_back({beta[static_cast<std::size_t>(start)],
                         from_eigen(e.vectors.middleCols(start, count), Eigen::VectorXd::Ones(count))});
    start = end;
  }
  out.achieved_error = op_norm(a - out.reconstruct());
  return out;
}

}  // namespace cstar
