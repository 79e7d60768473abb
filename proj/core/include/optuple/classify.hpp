#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optuple/operator_tuple.hpp"

namespace optuple {

/// Tri-state verdict. Residuals within a factor 10 of the threshold are
/// reported indeterminate and the boolean flag stays false.
enum class Verdict { yes, no, indeterminate };

struct FlagCheck {
  bool flag = false;
  Verdict verdict = Verdict::no;
  double residual = 0.0;
  double threshold = 0.0;
};

/// Band classification of a residual against its threshold.
FlagCheck band_check(double residual, double threshold);

enum class SqnMethod { definition, powers, polar };

/// Spherical quasinormality by one of the three equivalent routes:
/// definition  max_k ||[T_k, Theta_T(I)]||,
/// powers      Theta^n(I) = [Theta(I)]^n for n in {2, 3},
/// polar       max_k ||V_k P - P V_k|| from the spherical polar parts.
FlagCheck spherically_quasinormal_via(const OperatorTuple& t, SqnMethod method,
                                      const Tolerance& tol = {});

/// Per-class verdicts with witnessing residuals. Published flags respect
/// the implication chain normal => matricially qn => jointly qn =>
/// spherically qn (a stronger-class pass certifies the weaker classes);
/// hierarchy_consistent records whether the raw flags already did.
struct ClassificationReport {
  FlagCheck commuting;
  FlagCheck normal_tuple;
  FlagCheck matricially_qn;
  FlagCheck jointly_qn;
  FlagCheck spherically_qn;
  FlagCheck jointly_hyponormal;

  FlagCheck sqn_definition;
  FlagCheck sqn_powers;
  FlagCheck sqn_polar;
  bool methods_agree = true;        // outside the ambiguity band
  bool hierarchy_consistent = true; // raw monotonicity of the chain
};

ClassificationReport classify(const OperatorTuple& t, const Tolerance& tol = {});

/// Orthonormal basis of the largest common reducing subspace on which the
/// compressed tuple is normal; T is pure iff the result is trivial.
/// Iterative refinement: start from the joint kernel of the self- and
/// mixed adjoint commutators, then shrink to invariance under every T_k
/// and T_k* until the dimension stabilizes; the fixed point is validated.
/// Requires a commuting tuple.
SubspaceBasis normal_part_subspace(const OperatorTuple& t, const Tolerance& tol = {});

struct ConjectureCandidate {
  std::uint64_t trial = 0;
  std::uint64_t stream_seed = 0;
  std::string generator;
  double sqn_residual_t = 0.0;      // T itself (should be large for a hit)
  double sqn_residual_tn = 0.0;     // T^n (should be tiny for a hit)
  double hyponormal_residual = 0.0;
  std::vector<Matrix> mats;
};

struct ConjectureLog {
  int trials = 0;
  int commuting_hyponormal = 0;     // candidates surviving the filter
  int power_sqn = 0;                // of those, T^n spherically qn
  std::vector<ConjectureCandidate> candidates;  // expected empty
};

/// Falsification search for "commuting jointly hyponormal with T^n
/// spherically quasinormal implies T spherically quasinormal". Draws
/// seeded tuples, filters to commuting jointly hyponormal, and keeps any
/// with T^n spherically quasinormal while T is not, both at thresholds
/// separated by the factor-10 band. Hits are recorded for manual audit,
/// never auto-confirmed.
ConjectureLog conjecture_search(int dim, int d, unsigned n, int trials,
                                std::uint64_t seed, const Tolerance& tol = {},
                                int nthreads = 1);

}  // namespace optuple
