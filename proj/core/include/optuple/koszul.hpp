#pragma once

#include <vector>

#include "optuple/operator_tuple.hpp"

namespace optuple {

/// Koszul complex of a commuting tuple on the exterior algebra of C^d
/// tensored with C^n. Basis: index subsets S of {1..d} in lexicographic
/// order; boundary delta_p(e_S (x) v) = sum_{k not in S} sign(k, S)
/// e_{S u {k}} (x) T_k v with sign (-1)^#{s in S : s < k}. For d = 2 the
/// two nontrivial maps are the column (T_1; T_2) and the row (-T_2  T_1).
struct KoszulComplex {
  std::size_t d = 0;
  Eigen::Index dim = 0;
  /// d+1 maps; boundaries[p] is binom(d, p+1)*n by binom(d, p)*n
  /// (the last one has zero rows).
  std::vector<Matrix> boundaries;

  Eigen::Index stage_dim(std::size_t p) const;
};

struct HomologyProfile {
  std::vector<Eigen::Index> betti;  // h_p = dim ker delta_p - rank delta_{p-1}
  bool exact = false;               // all h_p == 0
};

/// Throws std::invalid_argument on a non-commuting tuple; the chain
/// property ||delta_{p+1} delta_p|| is verified at construction.
KoszulComplex build_koszul(const OperatorTuple& t, const Tolerance& tol = {});

HomologyProfile homology(const KoszulComplex& complex, const Tolerance& tol = {});

bool taylor_invertible(const OperatorTuple& t, const Tolerance& tol = {});

/// Trivial joint kernel. Range closedness is automatic at finite dimension,
/// so the verdict reduces to the kernel statement.
bool left_taylor_invertible(const OperatorTuple& t, const Tolerance& tol = {});

/// Joint eigenvalues via simultaneous unitary triangularization of a
/// seeded generic linear combination (verified, retried up to 3 times).
/// Deduplicated by cluster tolerance and sorted lexicographically by
/// (re, im) per coordinate.
std::vector<Eigen::VectorXcd> joint_eigenvalues(const OperatorTuple& t,
                                                const Tolerance& tol = {});

struct GridVerdict {
  Eigen::VectorXcd lambda;
  bool exact = false;
  std::vector<Eigen::Index> betti;
};

/// Exactness of the Koszul complex of T - lambda at each grid point;
/// output order equals input order.
std::vector<GridVerdict> taylor_spectrum_grid(const OperatorTuple& t,
                                              const std::vector<Eigen::VectorXcd>& grid,
                                              const Tolerance& tol = {});

/// Joint eigenvalues plus a perturbation ring (offsets along each
/// coordinate's real and imaginary axes, dropped when they collide with
/// the spectrum) and one far exterior point.
std::vector<Eigen::VectorXcd> auto_grid(const OperatorTuple& t, const Tolerance& tol = {});

OperatorTuple shift_tuple(const OperatorTuple& t, const Eigen::VectorXcd& lambda);

}  // namespace optuple
