#include "optuple/koszul.hpp"

#include <algorithm>
#include <cmath>

#include "optuple/rng.hpp"

namespace optuple {

namespace {

// subsets of {0..d-1} of size p, lexicographic on the index list
std::vector<std::vector<int>> subsets_of_size(int d, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == p) {
      out.push_back(cur);
      return;
    }
    for (int k = start; k < d; ++k) {
      cur.push_back(k);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Eigen::Index binom(int d, int p) {
  if (p < 0 || p > d) return 0;
  Eigen::Index r = 1;
  for (int i = 0; i < p; ++i) r = r * (d - i) / (i + 1);
  return r;
}

int subset_rank(const std::vector<std::vector<int>>& table, const std::vector<int>& s) {
  const auto it = std::find(table.begin(), table.end(), s);
  return static_cast<int>(it - table.begin());
}

}  // namespace

Eigen::Index KoszulComplex::stage_dim(std::size_t p) const {
  return binom(static_cast<int>(d), static_cast<int>(p)) * dim;
}

KoszulComplex build_koszul(const OperatorTuple& t, const Tolerance& tol) {
  if (is_commuting(t, tol).commuting == false)
    throw std::invalid_argument("build_koszul: tuple must commute");
  const int d = static_cast<int>(t.d());
  const Eigen::Index n = t.dim();

  KoszulComplex complex;
  complex.d = t.d();
  complex.dim = n;
  complex.boundaries.reserve(t.d() + 1);

  for (int p = 0; p <= d; ++p) {
    const auto src = subsets_of_size(d, p);
    const auto dst = subsets_of_size(d, p + 1);
    Matrix delta = Matrix::Zero(binom(d, p + 1) * n, binom(d, p) * n);
    for (std::size_t col = 0; col < src.size(); ++col) {
      const auto& s = src[col];
      for (int k = 0; k < d; ++k) {
        if (std::find(s.begin(), s.end(), k) != s.end()) continue;
        std::vector<int> target = s;
        target.insert(std::lower_bound(target.begin(), target.end(), k), k);
        const int row = subset_rank(dst, target);
        const int below = static_cast<int>(std::lower_bound(s.begin(), s.end(), k) - s.begin());
        const double sign = below % 2 == 0 ? 1.0 : -1.0;
        delta.block(row * n, static_cast<Eigen::Index>(col) * n, n, n) +=
            sign * t.mat(static_cast<std::size_t>(k));
      }
    }
    complex.boundaries.push_back(std::move(delta));
  }

  // chain property: delta_{p+1} delta_p = 0 for a commuting tuple
  const double thr = tol.threshold(std::max(1.0, t.max_norm() * t.max_norm())) * 1e2;
  for (std::size_t p = 0; p + 1 < complex.boundaries.size(); ++p) {
    if (complex.boundaries[p + 1].rows() == 0 || complex.boundaries[p].rows() == 0) continue;
    if ((complex.boundaries[p + 1] * complex.boundaries[p]).norm() > thr)
      throw NumericFailure("build_koszul: chain property violated");
  }
  return complex;
}

HomologyProfile homology(const KoszulComplex& complex, const Tolerance& tol) {
  HomologyProfile prof;
  const std::size_t stages = complex.d + 1;
  std::vector<Eigen::Index> ranks(stages, 0);  // rank of delta_p
  for (std::size_t p = 0; p < stages; ++p)
    if (complex.boundaries[p].rows() > 0)
      ranks[p] = numeric_rank(complex.boundaries[p], tol);

  prof.betti.resize(stages);
  for (std::size_t p = 0; p < stages; ++p) {
    const Eigen::Index ker = complex.stage_dim(p) - ranks[p];
    const Eigen::Index img = p == 0 ? 0 : ranks[p - 1];
    prof.betti[p] = ker - img;
  }
  prof.exact = std::all_of(prof.betti.begin(), prof.betti.end(),
                           [](Eigen::Index h) { return h == 0; });
  return prof;
}

bool taylor_invertible(const OperatorTuple& t, const Tolerance& tol) {
  return homology(build_koszul(t, tol), tol).exact;
}

bool left_taylor_invertible(const OperatorTuple& t, const Tolerance& tol) {
  return column_kernel(t, tol).m() == 0;
}

OperatorTuple shift_tuple(const OperatorTuple& t, const Eigen::VectorXcd& lambda) {
  if (lambda.size() != static_cast<Eigen::Index>(t.d()))
    throw std::invalid_argument("shift_tuple: lambda length must equal d");
  std::vector<Matrix> mats;
  mats.reserve(t.d());
  const Matrix id = Matrix::Identity(t.dim(), t.dim());
  for (std::size_t k = 0; k < t.d(); ++k)
    mats.push_back(t.mat(k) - lambda(static_cast<Eigen::Index>(k)) * id);
  return OperatorTuple(std::move(mats));
}

std::vector<Eigen::VectorXcd> joint_eigenvalues(const OperatorTuple& t,
                                                const Tolerance& tol) {
  if (is_commuting(t, tol).commuting == false)
    throw std::invalid_argument("joint_eigenvalues: tuple must commute");
  const Eigen::Index n = t.dim();
  const std::size_t d = t.d();
  const double scale = std::max(1.0, t.max_norm());

  Matrix q;
  bool ok = false;
  for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
    // seeded generic combination; fresh coefficients on retry
    StableRng rng = StableRng::stream(0x6b6f737a756cULL, static_cast<std::uint64_t>(attempt));
    Matrix combo = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < d; ++k) combo += rng.complex_in_disc(1.0) * t.mat(k);
    Eigen::ComplexSchur<Matrix> schur(combo);
    if (schur.info() != Eigen::Success) continue;
    q = schur.matrixU();
    ok = true;
    for (std::size_t k = 0; k < d && ok; ++k) {
      const Matrix tri = q.adjoint() * t.mat(k) * q;
      double lower = 0.0;
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j + 1; i < n; ++i) lower += std::norm(tri(i, j));
      if (std::sqrt(lower) > tol.threshold(scale) * 1e2) ok = false;
    }
  }
  if (!ok) throw NumericFailure("joint_eigenvalues: simultaneous triangularization failed");

  std::vector<Matrix> tri(d);
  for (std::size_t k = 0; k < d; ++k) tri[k] = q.adjoint() * t.mat(k) * q;
  std::vector<Eigen::VectorXcd> points(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXcd pt(static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) pt(static_cast<Eigen::Index>(k)) = tri[k](i, i);
    points[static_cast<std::size_t>(i)] = pt;
  }

  // dedup by cluster tolerance, then sort for a stable output order
  const double cluster = std::max(tol.abs, 1e2 * tol.rel * scale);
  std::vector<Eigen::VectorXcd> unique;
  for (const auto& pt : points) {
    bool dup = false;
    for (const auto& u : unique)
      if ((pt - u).lpNorm<Eigen::Infinity>() <= cluster) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(pt);
  }
  std::sort(unique.begin(), unique.end(), [](const auto& a, const auto& b) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
      if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
    }
    return false;
  });
  return unique;
}

std::vector<GridVerdict> taylor_spectrum_grid(const OperatorTuple& t,
                                              const std::vector<Eigen::VectorXcd>& grid,
                                              const Tolerance& tol) {
  if (is_commuting(t, tol).commuting == false)
    throw std::invalid_argument("taylor_spectrum_grid: tuple must commute");
  std::vector<GridVerdict> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    GridVerdict v;
    v.lambda = grid[i];
    const HomologyProfile prof = homology(build_koszul(shift_tuple(t, grid[i]), tol), tol);
    v.exact = prof.exact;
    v.betti = prof.betti;
    out[i] = std::move(v);
  }
  return out;
}

std::vector<Eigen::VectorXcd> auto_grid(const OperatorTuple& t, const Tolerance& tol) {
  const auto eigs = joint_eigenvalues(t, tol);
  const double radius = 0.2 * std::max(1.0, t.max_norm());
  std::vector<Eigen::VectorXcd> grid = eigs;

  auto near_spectrum = [&](const Eigen::VectorXcd& pt) {
    for (const auto& e : eigs)
      if ((pt - e).norm() < 0.5 * radius) return true;
    return false;
  };

  for (const auto& e : eigs) {
    for (Eigen::Index k = 0; k < e.size(); ++k) {
      const cxd offsets[4] = {cxd(radius, 0), cxd(-radius, 0), cxd(0, radius), cxd(0, -radius)};
      for (const cxd& off : offsets) {
        Eigen::VectorXcd pt = e;
        pt(k) += off;
        if (!near_spectrum(pt)) grid.push_back(pt);
      }
    }
  }

  // one point far outside the numerical range
  double norm_sum = 0.0;
  for (std::size_t k = 0; k < t.d(); ++k) norm_sum += t.mat(k).norm();
  grid.push_back(Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(t.d()),
                                            cxd(norm_sum + 1.0, 0.0)));
  return grid;
}

}  // namespace optuple
