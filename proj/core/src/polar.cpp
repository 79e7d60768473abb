#include "optuple/polar.hpp"

#include <cmath>

namespace optuple {

PolarParts spherical_polar(const OperatorTuple& t, const Tolerance& tol) {
  const Eigen::Index n = t.dim();
  const Matrix gram = theta_apply(t, Matrix::Identity(n, n));
  const SpectralResolution res = spectral_resolution(gram, tol);

  // singular values of P are sqrt of the clamped eigenvalues of Theta(I)
  double smax = 0.0;
  std::vector<double> roots(res.eigenvalues.size());
  for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
    roots[i] = std::sqrt(std::max(res.eigenvalues[i], 0.0));
    smax = std::max(smax, roots[i]);
  }
  const double cut = tol.rank_threshold(smax, static_cast<std::size_t>(n),
                                        static_cast<std::size_t>(n));

  Matrix p = Matrix::Zero(n, n);
  Matrix pinv = Matrix::Zero(n, n);
  Matrix init = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    p += roots[i] * res.projectors[i];
    if (roots[i] > cut) {
      pinv += (1.0 / roots[i]) * res.projectors[i];
      init += res.projectors[i];
    }
  }

  std::vector<Matrix> v;
  v.reserve(t.d());
  for (std::size_t k = 0; k < t.d(); ++k) v.push_back(t.mat(k) * pinv);
  return PolarParts{OperatorTuple(std::move(v), tol), std::move(p), std::move(init)};
}

ConditionVi check_condition_vi(const PolarParts& parts, const Tolerance& tol) {
  ConditionVi out;
  for (std::size_t k = 0; k < parts.V.d(); ++k) {
    const double r = (parts.V.mat(k) * parts.P - parts.P * parts.V.mat(k)).norm();
    out.residual = std::max(out.residual, r);
  }
  out.threshold = tol.threshold(std::max(1.0, parts.P.norm()));
  out.holds = out.residual <= out.threshold;
  return out;
}

}  // namespace optuple
