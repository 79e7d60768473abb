#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>

#include "optuple/tolerance.hpp"

namespace optuple {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Raised when a numerical precondition fails (non-Hermitian input where a
/// Hermitian matrix is required, triangularization residual above threshold,
/// significantly negative eigenvalue of a PSD quantity, ...).
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double frobenius(const Matrix& m) { return m.norm(); }

/// Numerical rank by the global SVD rank rule.
Eigen::Index numeric_rank(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis of the null space (columns; may be empty n x 0).
Matrix null_space(const Matrix& m, const Tolerance& tol);

/// Orthonormal basis of the column span, by modified Gram-Schmidt with one
/// re-orthogonalization pass in the given column order. Columns whose
/// residual falls below the drop threshold are skipped, so the result is
/// deterministic for a fixed input ordering.
Matrix orthonormalize_columns(const Matrix& m, const Tolerance& tol);

/// Deterministic orthonormal completion: orthonormalizes [basis | I] in
/// fixed column scan order and returns the trailing n - m columns.
/// `basis` must already have orthonormal columns.
Matrix orthonormal_complement(const Matrix& basis, const Tolerance& tol);

inline bool is_hermitian(const Matrix& m, const Tolerance& tol) {
  return (m - m.adjoint()).norm() <= tol.threshold(std::max(1.0, m.norm()));
}

/// Simple indexed parallel map: fn(i) for i in [0, n), results slotted by
/// index so the outcome is independent of scheduling. nthreads <= 1 runs
/// inline.
void parallel_for_indexed(std::size_t n, int nthreads,
                          const std::function<void(std::size_t)>& fn);

}  // namespace optuple
