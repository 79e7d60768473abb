#include "optuple/theta.hpp"

#include <cmath>

namespace optuple {

Matrix theta_apply(const OperatorTuple& t, const Matrix& x) {
  const Eigen::Index n = t.dim();
  if (x.rows() != n || x.cols() != n)
    throw std::invalid_argument("theta_apply: dimension mismatch");
  Matrix acc = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < t.d(); ++k)
    acc += t.mat(k).adjoint() * x * t.mat(k);
  return acc;
}

Matrix theta_iterate(const OperatorTuple& t, const Matrix& x, unsigned n) {
  Matrix acc = x;
  for (unsigned i = 0; i < n; ++i) acc = theta_apply(t, acc);
  return acc;
}

Matrix SpectralResolution::power(double p) const {
  if (projectors.empty()) return Matrix(0, 0);
  Matrix acc = Matrix::Zero(projectors[0].rows(), projectors[0].cols());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    acc += std::pow(eigenvalues[i], p) * projectors[i];
  return acc;
}

SpectralResolution spectral_resolution(const Matrix& m, const Tolerance& tol) {
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > tol.threshold(scale))
    throw NumericFailure("spectral_resolution: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw NumericFailure("spectral_resolution: eigensolver failed");
  const auto& vals = es.eigenvalues();   // ascending
  const auto& vecs = es.eigenvectors();
  const Eigen::Index n = vals.size();
  const double sigma_max = std::max(std::abs(vals(0)), std::abs(vals(n - 1)));
  if (vals(0) < -tol.threshold(std::max(1.0, sigma_max)) * 1e2)
    throw NumericFailure("spectral_resolution: significantly negative eigenvalue");

  const double gap = tol.rel * std::max(1.0, sigma_max);
  SpectralResolution res;
  Eigen::Index lo = 0;
  while (lo < n) {
    Eigen::Index hi = lo + 1;
    while (hi < n && vals(hi) - vals(hi - 1) < gap) ++hi;
    double mean = 0.0;
    for (Eigen::Index i = lo; i < hi; ++i) mean += vals(i);
    mean /= static_cast<double>(hi - lo);
    const Matrix block = vecs.middleCols(lo, hi - lo);
    res.eigenvalues.push_back(mean);
    res.projectors.push_back(block * block.adjoint());
    lo = hi;
  }
  return res;
}

MomentCheck moment_check(const OperatorTuple& t, unsigned n_max, const Tolerance& tol) {
  if (n_max < 2) throw std::invalid_argument("moment_check: n_max must be >= 2");
  const Eigen::Index n = t.dim();
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix theta1 = theta_apply(t, identity);
  const double mn = std::max(1.0, t.max_norm());

  MomentCheck out;
  Matrix theta_iter = theta1;       // Theta^k(I)
  Matrix theta_pow = theta1;        // [Theta(I)]^k
  bool ok23 = true;
  for (unsigned k = 2; k <= std::max(n_max, 3u); ++k) {
    theta_iter = theta_apply(t, theta_iter);
    theta_pow = theta_pow * theta1;
    const double r = (theta_iter - theta_pow).norm();
    const double thr = tol.threshold(std::pow(mn, 2.0 * k));
    if (k <= n_max) {
      out.residuals.push_back(r);
      out.thresholds.push_back(thr);
    }
    if (k <= 3) {
      out.residual_23 = std::max(out.residual_23, r);
      if (r > thr) ok23 = false;
    }
  }
  out.pass_23 = ok23;
  return out;
}

}  // namespace optuple
