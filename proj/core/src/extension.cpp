#include "optuple/extension.hpp"

#include <cmath>

#include "optuple/koszul.hpp"
#include "optuple/polar.hpp"
#include "optuple/theta.hpp"

namespace optuple {

namespace {

void require_normal_tuple(const OperatorTuple& t, const Tolerance& tol, const char* who) {
  const double scale = std::max(1.0, t.max_norm() * t.max_norm());
  if (is_commuting(t, tol).commuting == false)
    throw std::invalid_argument(std::string(who) + ": tuple does not commute");
  for (std::size_t k = 0; k < t.d(); ++k) {
    const Matrix& m = t.mat(k);
    if ((m.adjoint() * m - m * m.adjoint()).norm() > tol.threshold(scale))
      throw std::invalid_argument(std::string(who) + ": coordinate is not normal");
  }
}

}  // namespace

ExtensionSplit split_extension(const OperatorTuple& big, const SubspaceBasis& h,
                               const Tolerance& tol) {
  require_normal_tuple(big, tol, "split_extension");
  const Eigen::Index K = big.dim();
  const Eigen::Index m = h.m();
  if (h.dim() != K) throw std::invalid_argument("split_extension: basis dimension mismatch");
  if (m < 1 || m >= K)
    throw std::invalid_argument("split_extension: need 1 <= dim H <= K-1");

  const Matrix proj = h.projector();
  const Matrix out_proj = Matrix::Identity(K, K) - proj;
  double inv_res = 0.0;
  for (std::size_t k = 0; k < big.d(); ++k)
    inv_res = std::max(inv_res, (out_proj * (big.mat(k) * h.cols)).norm());
  const double thr = tol.threshold(std::max(1.0, big.max_norm())) * 1e2;
  if (inv_res > thr)
    throw InvariantSubspaceError("split_extension: subspace is not jointly invariant",
                                 inv_res);

  const Matrix h_perp = orthonormal_complement(h.cols, tol);
  std::vector<Matrix> t_blocks, a_blocks, s_blocks;
  for (std::size_t k = 0; k < big.d(); ++k) {
    t_blocks.push_back(h.cols.adjoint() * big.mat(k) * h.cols);
    a_blocks.push_back(h.cols.adjoint() * big.mat(k) * h_perp);
    s_blocks.push_back((h_perp.adjoint() * big.mat(k) * h_perp).adjoint());
  }
  return ExtensionSplit{big,
                        h,
                        h_perp,
                        OperatorTuple(std::move(t_blocks), tol),
                        std::move(a_blocks),
                        OperatorTuple(std::move(s_blocks), tol),
                        inv_res};
}

ThetaBlockReport theta_block_check(const ExtensionSplit& split, const Tolerance& tol) {
  const Eigen::Index m = split.compressed.dim();
  const Eigen::Index r = split.dual.dim();
  ThetaBlockReport rep;

  Matrix offdiag = Matrix::Zero(m, r);
  for (std::size_t k = 0; k < split.big.d(); ++k)
    offdiag += split.compressed.mat(k).adjoint() * split.coupling[k];
  rep.offdiag_residual = offdiag.norm();
  const double mn = std::max(1.0, split.big.max_norm());
  rep.threshold = tol.threshold(mn * mn);
  rep.block_diagonal = rep.offdiag_residual <= rep.threshold;

  Matrix lhs = Matrix::Zero(r, r);
  Matrix rhs = Matrix::Zero(r, r);
  for (std::size_t k = 0; k < split.big.d(); ++k) {
    const Matrix& a = split.coupling[k];
    const Matrix& s = split.dual.mat(k);
    lhs += a.adjoint() * a + s * s.adjoint();
    rhs += s.adjoint() * s;
  }
  rep.normality_identity_residual = (lhs - rhs).norm();
  return rep;
}

SubspaceBasis minimal_reducing_closure(const OperatorTuple& big, const SubspaceBasis& h,
                                       const Tolerance& tol) {
  require_normal_tuple(big, tol, "minimal_reducing_closure");
  const Eigen::Index K = big.dim();
  Matrix basis = h.cols;
  for (;;) {
    Matrix grown(K, basis.cols() * static_cast<Eigen::Index>(2 * big.d() + 1));
    grown.leftCols(basis.cols()) = basis;
    Eigen::Index at = basis.cols();
    for (std::size_t k = 0; k < big.d(); ++k) {
      grown.middleCols(at, basis.cols()) = big.mat(k) * basis;
      at += basis.cols();
      grown.middleCols(at, basis.cols()) = big.mat(k).adjoint() * basis;
      at += basis.cols();
    }
    Matrix next = orthonormalize_columns(grown, tol);
    if (next.cols() == basis.cols()) break;
    basis = std::move(next);
    if (basis.cols() == K) break;
  }
  return SubspaceBasis(std::move(basis), tol);
}

PolarInheritance polar_inheritance_check(const ExtensionSplit& split, const Tolerance& tol) {
  const FlagCheck sqn =
      spherically_quasinormal_via(split.compressed, SqnMethod::definition, tol);
  if (!sqn.flag)
    throw std::invalid_argument(
        "polar_inheritance_check: compressed tuple is not spherically quasinormal");

  const PolarParts outer = spherical_polar(split.big, tol);
  const PolarParts inner = spherical_polar(split.compressed, tol);
  const Matrix& hb = split.h.cols;

  PolarInheritance res;
  res.p_residual = (inner.P - hb.adjoint() * outer.P * hb).norm();
  for (std::size_t k = 0; k < split.big.d(); ++k) {
    const Matrix wc = hb.adjoint() * outer.V.mat(k) * hb;
    res.v_residual = std::max(
        res.v_residual, ((inner.V.mat(k) - wc) * inner.initial_projector).norm());
  }
  return res;
}

DualReport dual_tuple(const ExtensionSplit& split, const Tolerance& tol,
                      bool require_minimal) {
  const Eigen::Index K = split.big.dim();
  DualReport rep;
  const SubspaceBasis closure = minimal_reducing_closure(split.big, split.h, tol);
  rep.closure_dim = closure.m();
  rep.minimal = closure.m() == K;
  if (require_minimal && !rep.minimal)
    throw std::invalid_argument("dual_tuple: reducing closure of H is a proper subspace");

  // adjoint split in the [H_perp | H] basis must be [[S_k, A_k*], [0, T_k*]]
  const Eigen::Index m = split.compressed.dim();
  const Eigen::Index r = split.dual.dim();
  Matrix b2(K, K);
  b2.leftCols(r) = split.h_perp;
  b2.rightCols(m) = split.h.cols;
  for (std::size_t k = 0; k < split.big.d(); ++k) {
    const Matrix got = b2.adjoint() * split.big.mat(k).adjoint() * b2;
    Matrix want = Matrix::Zero(K, K);
    want.topLeftCorner(r, r) = split.dual.mat(k);
    want.topRightCorner(r, m) = split.coupling[k].adjoint();
    want.bottomRightCorner(m, m) = split.compressed.mat(k).adjoint();
    rep.adjoint_split_residual = std::max(rep.adjoint_split_residual, (got - want).norm());
  }

  rep.dual_classification = classify(split.dual, tol);
  rep.compressed_normal_part_dim = normal_part_subspace(split.compressed, tol).m();
  rep.dual_normal_part_dim = normal_part_subspace(split.dual, tol).m();
  rep.compressed_pure = rep.compressed_normal_part_dim == 0;
  rep.dual_pure = rep.dual_normal_part_dim == 0;
  return rep;
}

InvertibilityReport invertibility_equivalence_check(const ExtensionSplit& split,
                                                    const Tolerance& tol) {
  InvertibilityReport rep;
  rep.taylor_invertible_big = taylor_invertible(split.big, tol);

  const Eigen::Index K = split.big.dim();
  const Matrix gram = theta_apply(split.big, Matrix::Identity(K, K));
  rep.theta_big_invertible = numeric_rank(gram, tol) == K;

  rep.kernel_trivial_compressed = column_kernel(split.compressed, tol).m() == 0;
  rep.kernel_trivial_dual = column_kernel(split.dual, tol).m() == 0;
  rep.left_invertible_compressed = left_taylor_invertible(split.compressed, tol);
  rep.left_invertible_dual = left_taylor_invertible(split.dual, tol);

  const bool v3 = rep.kernel_trivial_compressed && rep.kernel_trivial_dual;
  const bool v4 = rep.left_invertible_compressed && rep.left_invertible_dual;
  rep.all_agree = rep.taylor_invertible_big == rep.theta_big_invertible &&
                  rep.theta_big_invertible == v3 && v3 == v4;
  return rep;
}

double kernel_orthogonality_residual(const ExtensionSplit& split, const Tolerance& tol) {
  const SubspaceBasis ker = column_kernel(split.big, tol);
  if (ker.m() == 0) return 0.0;
  const Eigen::Index m = split.compressed.dim();
  const Matrix theta_t = theta_apply(split.compressed, Matrix::Identity(m, m));
  // columns of H * Theta_T(I) span Theta_T(I) H (+) 0 inside C^K
  return (ker.cols.adjoint() * (split.h.cols * theta_t)).norm();
}

}  // namespace optuple
