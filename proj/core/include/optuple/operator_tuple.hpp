#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "optuple/numeric.hpp"
#include "optuple/tolerance.hpp"

namespace optuple {

enum class Commuting { unknown, yes, no };

/// A d-tuple of n x n complex matrices, viewed as the column operator
/// H -> H^d. Immutable after construction; the pairwise commutation
/// residual is computed eagerly and cached.
class OperatorTuple {
 public:
  explicit OperatorTuple(std::vector<Matrix> mats, const Tolerance& tol = {});

  std::size_t d() const { return mats_.size(); }
  Eigen::Index dim() const { return mats_.empty() ? 0 : mats_[0].rows(); }
  const Matrix& mat(std::size_t k) const { return mats_[k]; }
  const std::vector<Matrix>& mats() const { return mats_; }

  Commuting commuting() const { return commuting_; }
  /// max_{i<j} ||T_i T_j - T_j T_i||_F, 0 when d == 1.
  double commutation_residual() const { return commutation_residual_; }
  /// max_k ||T_k||_F
  double max_norm() const { return max_norm_; }

  /// The dn x n stacked column matrix (T_1; ...; T_d).
  Matrix column_matrix() const;

 private:
  std::vector<Matrix> mats_;
  Commuting commuting_ = Commuting::unknown;
  double commutation_residual_ = 0.0;
  double max_norm_ = 0.0;
};

/// Orthonormal basis of a subspace (n x m, m may be 0).
struct SubspaceBasis {
  Matrix cols;

  SubspaceBasis() : cols(0, 0) {}
  explicit SubspaceBasis(Matrix c, const Tolerance& tol = {});

  Eigen::Index dim() const { return cols.rows(); }
  Eigen::Index m() const { return cols.cols(); }
  Matrix projector() const { return cols * cols.adjoint(); }
};

/// (T_1*, ..., T_d*). Involution: adjoint_tuple(adjoint_tuple(T)) == T.
OperatorTuple adjoint_tuple(const OperatorTuple& t);

struct CommutingVerdict {
  bool commuting = false;
  double residual = 0.0;
  double threshold = 0.0;
};

/// Verdict against max(tol.abs, tol.rel * max_k ||T_k||_F^2).
CommutingVerdict is_commuting(const OperatorTuple& t, const Tolerance& tol = {});

/// T o S = (T_1 S_1, ..., T_1 S_n, ..., T_m S_1, ..., T_m S_n),
/// row-major in (i, j). All downstream index bookkeeping relies on
/// this ordering.
OperatorTuple circ_product(const OperatorTuple& t, const OperatorTuple& s,
                           const Tolerance& tol = {});

/// TS = (T_1 S_1, ..., T_d S_d); requires equal lengths.
OperatorTuple pointwise_product(const OperatorTuple& t, const OperatorTuple& s,
                                const Tolerance& tol = {});

inline constexpr std::size_t kDefaultCircPowerCap = 4096;

/// T^1 = T, T^{n+1} = T o T^n; the result has d^n entries (words of
/// length n in lexicographic order). Rejects n == 0 and results larger
/// than max_entries.
OperatorTuple power_circ(const OperatorTuple& t, unsigned n,
                         std::size_t max_entries = kDefaultCircPowerCap,
                         const Tolerance& tol = {});

/// T^{(n)} = (T_1^n, ..., T_d^n). Rejects n == 0.
OperatorTuple power_pointwise(const OperatorTuple& t, unsigned n,
                              const Tolerance& tol = {});

/// Orthonormal basis of N(T) = intersection of the N(T_k), computed as the
/// null space of the stacked column matrix.
SubspaceBasis column_kernel(const OperatorTuple& t, const Tolerance& tol = {});

}  // namespace optuple
