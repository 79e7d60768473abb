#pragma once

#include <optional>

#include "optuple/operator_tuple.hpp"
#include "optuple/theta.hpp"

namespace optuple {

/// Spherical polar decomposition T = VP: P = sqrt(Theta_T(I)) and V the
/// spherical partial isometry with sum_k V_k* V_k equal to the orthogonal
/// projection onto N(T)^perp. V is pinned to the canonical choice
/// V_k = T_k P^+ (zero on N(P)), which makes the decomposition unique.
struct PolarParts {
  OperatorTuple V;
  Matrix P;
  Matrix initial_projector;
};

PolarParts spherical_polar(const OperatorTuple& t, const Tolerance& tol = {});

struct ConditionVi {
  bool holds = false;
  double residual = 0.0;   // max_k ||V_k P - P V_k||_F
  double threshold = 0.0;
};

/// VP = PV entrywise, the polar-decomposition characterization of
/// spherical quasinormality.
ConditionVi check_condition_vi(const PolarParts& parts, const Tolerance& tol = {});

}  // namespace optuple
