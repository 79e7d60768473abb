#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optuple/operator_tuple.hpp"
#include "optuple/rng.hpp"

namespace optuple {

enum class ShiftKind { hardy, drury_arveson, bergman };

/// Weighted multishift on the graded multi-index basis {e_alpha : |alpha| <= N}
/// (graded lexicographic, ascending), hard-truncated at the top degree:
/// T_k e_alpha = w_k(alpha) e_{alpha+eps_k} for |alpha| < N and 0 at |alpha| = N.
/// All "interior" assertions carry their projector explicitly; the top
/// degree is where truncation error lives.
struct TruncatedMultishift {
  int d;
  int N;
  ShiftKind kind;
  std::vector<std::vector<int>> basis;           // multi-indices in basis order
  std::vector<std::vector<double>> weights;      // weights[k][i], |basis[i]| < N
  OperatorTuple mats;
  SubspaceBasis interior;                        // degrees <= N-1

  /// Coordinate subspace of degrees <= maxdeg (a prefix in graded order).
  SubspaceBasis degree_subspace(int maxdeg) const;
};

/// Weights: hardy sqrt((a_k+1)/(|a|+d)), drury_arveson sqrt((a_k+1)/(|a|+1)),
/// bergman sqrt((a_k+1)/(|a|+d+1)). The commuting-multishift condition
/// w_k(a) w_j(a+eps_k) = w_j(a) w_k(a+eps_j) is verified at construction.
TruncatedMultishift truncated_multishift(ShiftKind kind, int d, int N,
                                         const Tolerance& tol = {});

std::vector<std::vector<int>> graded_lex_indices(int d, int N);

struct ExpectedFlags {
  bool commuting = false;
  bool normal_tuple = false;
  bool matricially_qn = false;
  bool jointly_qn = false;
  bool spherically_qn = false;
  bool jointly_hyponormal = false;
};

struct GalleryEntry {
  std::string name;
  OperatorTuple tuple;
  ExpectedFlags expected;
  bool subnormal = false;        // genuine subnormal (= normal tuple at finite dim)
  bool zero_cross_products = false;  // T_i T_j = 0 for i != j
  std::string note;
};

/// Deterministic corpus covering every reachable class: normal diagonals,
/// seeded random normals, nilpotent shifts, adjoint pairs and unitary
/// pairs separating the quasinormal classes, direct sums with normal
/// summands, zero-cross-product tuples, and truncated multishifts.
std::vector<GalleryEntry> gallery();

/// N_k = U D_k U* with one seeded unitary and seeded complex diagonals.
OperatorTuple random_commuting_normal(int dim, int d, std::uint64_t seed,
                                      const Tolerance& tol = {});

struct CommutingSample {
  OperatorTuple tuple;
  std::vector<Eigen::VectorXcd> joint_eigs;  // known from the construction
};

/// T_k = S q_k(R) S^{-1} with a shared seeded upper-triangular R (separated
/// diagonal), seeded polynomials q_k, and a well-conditioned seeded S.
/// The joint eigenvalues (q_1(r_ii), ..., q_d(r_ii)) come along for free.
CommutingSample random_commuting(int dim, int d, std::uint64_t seed,
                                 const Tolerance& tol = {});

struct NestedPolarResiduals {
  double p_residual = 0.0;
  double v_residual = 0.0;
};

/// Embeds the N-truncation inside the (N+1)-truncation and compares the
/// small model's spherical polar parts against the compressions of the
/// big model's, restricted to the small model's interior.
NestedPolarResiduals nested_polar_inheritance(ShiftKind kind, int d, int N,
                                              const Tolerance& tol = {});

/// Windowed spherical-quasinormality residual for T^n on a multishift:
/// max over entries G of T^n of ||[G, Theta_{T^n}(I)] restricted to
/// degrees <= N - 2n||. The window is where truncation cannot reach.
struct InteriorSqnResidual {
  double residual = 0.0;
  Eigen::Index window_dim = 0;
};
InteriorSqnResidual interior_sqn_residual(const TruncatedMultishift& ms, unsigned n,
                                          const Tolerance& tol = {});

}  // namespace optuple
