#pragma once

#include <vector>

#include "optuple/operator_tuple.hpp"

namespace optuple {

/// Theta_T(X) = sum_k T_k* X T_k.
Matrix theta_apply(const OperatorTuple& t, const Matrix& x);

/// n-fold application; Theta^0(X) = X.
Matrix theta_iterate(const OperatorTuple& t, const Matrix& x, unsigned n);

/// Finite eigen-resolution of a Hermitian PSD matrix: ascending eigenvalue
/// clusters with orthogonal spectral projectors. This is the finite-
/// dimensional realization of the spectral measure of Theta_T(I).
struct SpectralResolution {
  std::vector<double> eigenvalues;   // ascending, one per cluster
  std::vector<Matrix> projectors;    // Hermitian idempotents, sum = I

  /// sum_i lambda_i^p E_i
  Matrix power(double p) const;
};

/// Eigen-decomposition with clustering (gap below rel * max(1, sigma_max)
/// merges). Throws NumericFailure on non-Hermitian input or on an
/// eigenvalue significantly below zero.
SpectralResolution spectral_resolution(const Matrix& m, const Tolerance& tol = {});

struct MomentCheck {
  std::vector<double> residuals;   // ||Theta^n(I) - [Theta(I)]^n||_F, n = 2..n_max
  std::vector<double> thresholds;  // per-n thresholds at scale max_norm^(2n)
  bool pass_23 = false;            // both n = 2 and n = 3 below threshold
  double residual_23 = 0.0;        // max raw residual over n in {2, 3}
};

/// Residuals of Theta_T^n(I) = [Theta_T(I)]^n for n = 2..n_max. The n in
/// {2, 3} pair is the decisive check; larger n are diagnostics.
MomentCheck moment_check(const OperatorTuple& t, unsigned n_max = 5,
                         const Tolerance& tol = {});

}  // namespace optuple
