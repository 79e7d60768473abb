#include "optuple/operator_tuple.hpp"

#include <stdexcept>

namespace optuple {

OperatorTuple::OperatorTuple(std::vector<Matrix> mats, const Tolerance& tol)
    : mats_(std::move(mats)) {
  if (mats_.empty()) throw std::invalid_argument("OperatorTuple: d must be >= 1");
  const Eigen::Index n = mats_[0].rows();
  if (n < 1) throw std::invalid_argument("OperatorTuple: dim must be >= 1");
  for (const auto& m : mats_) {
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("OperatorTuple: all matrices must be square of equal dimension");
    max_norm_ = std::max(max_norm_, m.norm());
  }
  for (std::size_t i = 0; i < mats_.size(); ++i)
    for (std::size_t j = i + 1; j < mats_.size(); ++j)
      commutation_residual_ = std::max(
          commutation_residual_, (mats_[i] * mats_[j] - mats_[j] * mats_[i]).norm());
  const double thr = tol.threshold(max_norm_ * max_norm_);
  commuting_ = commutation_residual_ <= thr ? Commuting::yes : Commuting::no;
}

Matrix OperatorTuple::column_matrix() const {
  const Eigen::Index n = dim();
  Matrix stacked(static_cast<Eigen::Index>(d()) * n, n);
  for (std::size_t k = 0; k < d(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * n, n) = mats_[k];
  return stacked;
}

SubspaceBasis::SubspaceBasis(Matrix c, const Tolerance& tol) : cols(std::move(c)) {
  if (cols.cols() > cols.rows())
    throw std::invalid_argument("SubspaceBasis: more columns than the space dimension");
  if (cols.cols() > 0) {
    const Matrix gram = cols.adjoint() * cols;
    const double err = (gram - Matrix::Identity(cols.cols(), cols.cols())).norm();
    if (err > tol.threshold(static_cast<double>(cols.cols())) * 1e2)
      throw std::invalid_argument("SubspaceBasis: columns are not orthonormal");
  }
}

OperatorTuple adjoint_tuple(const OperatorTuple& t) {
  std::vector<Matrix> out;
  out.reserve(t.d());
  for (const auto& m : t.mats()) out.push_back(m.adjoint());
  return OperatorTuple(std::move(out));
}

CommutingVerdict is_commuting(const OperatorTuple& t, const Tolerance& tol) {
  CommutingVerdict v;
  v.residual = t.commutation_residual();
  v.threshold = tol.threshold(t.max_norm() * t.max_norm());
  v.commuting = v.residual <= v.threshold;
  return v;
}

OperatorTuple circ_product(const OperatorTuple& t, const OperatorTuple& s,
                           const Tolerance& tol) {
  if (t.dim() != s.dim())
    throw std::invalid_argument("circ_product: dimension mismatch");
  std::vector<Matrix> out;
  out.reserve(t.d() * s.d());
  for (std::size_t i = 0; i < t.d(); ++i)
    for (std::size_t j = 0; j < s.d(); ++j)
      out.push_back(t.mat(i) * s.mat(j));
  return OperatorTuple(std::move(out), tol);
}

OperatorTuple pointwise_product(const OperatorTuple& t, const OperatorTuple& s,
                                const Tolerance& tol) {
  if (t.d() != s.d())
    throw std::invalid_argument("pointwise_product: tuple length mismatch");
  if (t.dim() != s.dim())
    throw std::invalid_argument("pointwise_product: dimension mismatch");
  std::vector<Matrix> out;
  out.reserve(t.d());
  for (std::size_t k = 0; k < t.d(); ++k) out.push_back(t.mat(k) * s.mat(k));
  return OperatorTuple(std::move(out), tol);
}

OperatorTuple power_circ(const OperatorTuple& t, unsigned n, std::size_t max_entries,
                         const Tolerance& tol) {
  if (n == 0) throw std::invalid_argument("power_circ: n must be >= 1");
  double entries = 1.0;
  for (unsigned i = 0; i < n; ++i) {
    entries *= static_cast<double>(t.d());
    if (entries > static_cast<double>(max_entries))
      throw std::invalid_argument("power_circ: d^n exceeds the entry cap");
  }
  OperatorTuple acc = t;
  for (unsigned i = 1; i < n; ++i) acc = circ_product(t, acc, tol);
  return acc;
}

OperatorTuple power_pointwise(const OperatorTuple& t, unsigned n, const Tolerance& tol) {
  if (n == 0) throw std::invalid_argument("power_pointwise: n must be >= 1");
  std::vector<Matrix> out;
  out.reserve(t.d());
  for (std::size_t k = 0; k < t.d(); ++k) {
    Matrix p = t.mat(k);
    for (unsigned i = 1; i < n; ++i) p = t.mat(k) * p;
    out.push_back(std::move(p));
  }
  return OperatorTuple(std::move(out), tol);
}

SubspaceBasis column_kernel(const OperatorTuple& t, const Tolerance& tol) {
  return SubspaceBasis(null_space(t.column_matrix(), tol), tol);
}

}  // namespace optuple
