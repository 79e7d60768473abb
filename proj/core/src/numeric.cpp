#include "optuple/numeric.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace optuple {

Eigen::Index numeric_rank(const Matrix& m, const Tolerance& tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double cut = tol.rank_threshold(sv(0), static_cast<std::size_t>(m.rows()),
                                        static_cast<std::size_t>(m.cols()));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

Matrix null_space(const Matrix& m, const Tolerance& tol) {
  if (m.cols() == 0) return Matrix(m.cols(), 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = tol.rank_threshold(smax, static_cast<std::size_t>(m.rows()),
                                        static_cast<std::size_t>(m.cols()));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

Matrix orthonormalize_columns(const Matrix& m, const Tolerance& tol) {
  const Eigen::Index n = m.rows();
  Matrix basis(n, std::min(n, m.cols()));
  Eigen::Index k = 0;
  const double drop = tol.rank_threshold(1.0, static_cast<std::size_t>(n),
                                         static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols() && k < n; ++j) {
    Vector v = m.col(j);
    const double scale = std::max(1.0, v.norm());
    // two MGS passes keep orthogonality near round-off
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < k; ++i)
        v -= basis.col(i).dot(v) * basis.col(i);
    const double nv = v.norm();
    if (nv <= drop * scale) continue;
    basis.col(k++) = v / nv;
  }
  return basis.leftCols(k);
}

Matrix orthonormal_complement(const Matrix& basis, const Tolerance& tol) {
  const Eigen::Index n = basis.rows();
  Matrix stacked(n, basis.cols() + n);
  stacked.leftCols(basis.cols()) = basis;
  stacked.rightCols(n) = Matrix::Identity(n, n);
  Matrix full = orthonormalize_columns(stacked, tol);
  return full.rightCols(full.cols() - basis.cols());
}

void parallel_for_indexed(std::size_t n, int nthreads,
                          const std::function<void(std::size_t)>& fn) {
  if (nthreads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(nthreads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace optuple
