#pragma once

#include <vector>

#include "optuple/classify.hpp"
#include "optuple/operator_tuple.hpp"

namespace optuple {

/// Thrown by split_extension when the subspace is not jointly invariant
/// within tolerance; callers surface it separately from other argument
/// errors.
class InvariantSubspaceError : public std::invalid_argument {
 public:
  InvariantSubspaceError(const std::string& what, double residual)
      : std::invalid_argument(what), residual(residual) {}
  double residual;
};

/// Blocks of a normal tuple over a jointly invariant subspace, in the
/// deterministic completion basis [H | H_perp]:
///   N_k = [ T_k  A_k ]
///         [ 0    S_k*]
/// with S the dual candidate on H_perp.
struct ExtensionSplit {
  OperatorTuple big;             // N on C^K
  SubspaceBasis h;               // K x m
  Matrix h_perp;                 // K x (K-m)
  OperatorTuple compressed;      // T_k, m x m
  std::vector<Matrix> coupling;  // A_k, m x (K-m)
  OperatorTuple dual;            // S_k = (lower-right block)*, (K-m) x (K-m)
  double invariance_residual = 0.0;
};

/// Requires a normal tuple, a jointly invariant H with 1 <= m <= K-1.
/// Throws std::invalid_argument on a non-normal tuple and
/// InvariantSubspaceError when the lower-left block does not vanish.
ExtensionSplit split_extension(const OperatorTuple& big, const SubspaceBasis& h,
                               const Tolerance& tol = {});

struct ThetaBlockReport {
  double offdiag_residual = 0.0;    // ||sum_k T_k* A_k||_F
  double threshold = 0.0;
  bool block_diagonal = false;
  double normality_identity_residual = 0.0;  // sum(A*A + SS*) vs sum S*S
};

/// Theta_N(I) in the split basis: the off-diagonal block is sum_k T_k* A_k
/// and vanishes exactly when the compressed tuple is spherically
/// quasinormal; also cross-checks the normality identity used to reduce
/// the lower-right block.
ThetaBlockReport theta_block_check(const ExtensionSplit& split, const Tolerance& tol = {});

/// Smallest subspace containing H and invariant under every N_k and N_k*,
/// by iterated application and re-orthonormalization. The input basis
/// columns stay first, so the result is deterministic.
SubspaceBasis minimal_reducing_closure(const OperatorTuple& big, const SubspaceBasis& h,
                                       const Tolerance& tol = {});

struct PolarInheritance {
  double p_residual = 0.0;  // ||P - compression of R to H||
  double v_residual = 0.0;  // max_k ||(V_k - compression of W_k) on N(P)^perp||
};

/// Compares the compressed tuple's polar parts against the compressions of
/// the big tuple's. The V comparison is restricted to N(P)^perp, where
/// both partial isometries are pinned by the canonical choice. Requires
/// the compressed tuple spherically quasinormal.
PolarInheritance polar_inheritance_check(const ExtensionSplit& split,
                                         const Tolerance& tol = {});

struct DualReport {
  bool minimal = false;              // closure of H equals the full space
  Eigen::Index closure_dim = 0;
  double adjoint_split_residual = 0.0;  // N_k* vs [[S_k, A_k*], [0, T_k*]]
  ClassificationReport dual_classification;
  Eigen::Index compressed_normal_part_dim = 0;
  Eigen::Index dual_normal_part_dim = 0;
  bool compressed_pure = false;
  bool dual_pure = false;
};

/// The dual tuple S with its report: adjoint-split shape in the
/// [H_perp | H] basis, classification of S, and purity of both parts.
/// With require_minimal the call errors when the reducing closure of H is
/// a proper subspace (the strict reading of duality); by default
/// minimality is recorded in the report and left to the caller.
DualReport dual_tuple(const ExtensionSplit& split, const Tolerance& tol = {},
                      bool require_minimal = false);

struct InvertibilityReport {
  bool taylor_invertible_big = false;   // (i)
  bool theta_big_invertible = false;    // (ii)  kernel statement for R(N) closed
  bool kernel_trivial_compressed = false;
  bool kernel_trivial_dual = false;     // (iii) pair
  bool left_invertible_compressed = false;
  bool left_invertible_dual = false;    // (iv) pair
  bool all_agree = false;
};

/// The four equivalent invertibility conditions, each computed
/// independently. Closed-range clauses are reported as the kernel
/// statements they reduce to at finite dimension.
InvertibilityReport invertibility_equivalence_check(const ExtensionSplit& split,
                                                    const Tolerance& tol = {});

/// The orthogonality step of the injectivity theorem: residual of
/// N(big) being orthogonal to Theta_T(I) H (+) 0.
double kernel_orthogonality_residual(const ExtensionSplit& split,
                                     const Tolerance& tol = {});

}  // namespace optuple
