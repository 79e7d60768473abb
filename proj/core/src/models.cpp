#include "optuple/models.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "optuple/polar.hpp"
#include "optuple/theta.hpp"

namespace optuple {

namespace {

int degree(const std::vector<int>& alpha) {
  int g = 0;
  for (int a : alpha) g += a;
  return g;
}

void enumerate_degree(int d, int g, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d - 1) {
    cur.push_back(g);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= g; ++a) {
    cur.push_back(a);
    enumerate_degree(d, g - a, cur, out);
    cur.pop_back();
  }
}

double shift_weight(ShiftKind kind, int d, const std::vector<int>& alpha, int k) {
  const double ak = static_cast<double>(alpha[static_cast<std::size_t>(k)]);
  const double g = static_cast<double>(degree(alpha));
  switch (kind) {
    case ShiftKind::hardy:
      return std::sqrt((ak + 1.0) / (g + static_cast<double>(d)));
    case ShiftKind::drury_arveson:
      return std::sqrt((ak + 1.0) / (g + 1.0));
    case ShiftKind::bergman:
      return std::sqrt((ak + 1.0) / (g + static_cast<double>(d) + 1.0));
  }
  throw std::invalid_argument("truncated_multishift: invalid kind");
}

Matrix random_unitary(int dim, StableRng& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = rng.complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // pin the phase of each column so the draw is unambiguous
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const cxd rjj = r(j, j);
    if (std::abs(rjj) > 0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

Matrix jordan_block2() {
  Matrix j(2, 2);
  j << cxd(0), cxd(1), cxd(0), cxd(0);
  return j;
}

Matrix diag2(cxd a, cxd b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

std::vector<std::vector<int>> graded_lex_indices(int d, int N) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  for (int g = 0; g <= N; ++g) enumerate_degree(d, g, cur, out);
  return out;
}

SubspaceBasis TruncatedMultishift::degree_subspace(int maxdeg) const {
  const Eigen::Index n = mats.dim();
  Eigen::Index count = 0;
  for (const auto& alpha : basis)
    if (degree(alpha) <= maxdeg) ++count;
  Matrix cols = Matrix::Identity(n, n).leftCols(count);
  return SubspaceBasis(std::move(cols));
}

TruncatedMultishift truncated_multishift(ShiftKind kind, int d, int N,
                                         const Tolerance& tol) {
  if (d < 2) throw std::invalid_argument("truncated_multishift: d must be >= 2");
  if (N < 2) throw std::invalid_argument("truncated_multishift: N must be >= 2");

  const auto basis = graded_lex_indices(d, N);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  std::map<std::vector<int>, Eigen::Index> position;
  for (Eigen::Index i = 0; i < n; ++i) position[basis[static_cast<std::size_t>(i)]] = i;

  std::vector<std::vector<double>> weights(static_cast<std::size_t>(d));
  std::vector<Matrix> mats(static_cast<std::size_t>(d), Matrix::Zero(n, n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& alpha = basis[static_cast<std::size_t>(i)];
    if (degree(alpha) >= N) continue;
    for (int k = 0; k < d; ++k) {
      const double w = shift_weight(kind, d, alpha, k);
      std::vector<int> up = alpha;
      ++up[static_cast<std::size_t>(k)];
      mats[static_cast<std::size_t>(k)](position.at(up), i) = w;
      weights[static_cast<std::size_t>(k)].push_back(w);
    }
  }

  // commuting-multishift condition on the weights
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& alpha = basis[static_cast<std::size_t>(i)];
    if (degree(alpha) > N - 2) continue;
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        std::vector<int> up_k = alpha, up_j = alpha;
        ++up_k[static_cast<std::size_t>(k)];
        ++up_j[static_cast<std::size_t>(j)];
        const double lhs = shift_weight(kind, d, alpha, k) * shift_weight(kind, d, up_k, j);
        const double rhs = shift_weight(kind, d, alpha, j) * shift_weight(kind, d, up_j, k);
        if (std::abs(lhs - rhs) > 1e-12)
          throw NumericFailure("truncated_multishift: weights violate commutation");
      }
  }

  OperatorTuple tuple(std::move(mats), tol);
  Eigen::Index interior_count = 0;
  for (const auto& alpha : basis)
    if (degree(alpha) <= N - 1) ++interior_count;
  SubspaceBasis interior(Matrix::Identity(n, n).leftCols(interior_count));

  return TruncatedMultishift{d, N, kind, basis, std::move(weights), std::move(tuple),
                             std::move(interior)};
}

OperatorTuple random_commuting_normal(int dim, int d, std::uint64_t seed,
                                      const Tolerance& tol) {
  if (dim < 1 || d < 1)
    throw std::invalid_argument("random_commuting_normal: bad dimensions");
  StableRng rng = StableRng::stream(seed, 0);
  const Matrix u = random_unitary(dim, rng);
  std::vector<Matrix> mats;
  mats.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    Eigen::VectorXcd diag(dim);
    for (Eigen::Index i = 0; i < dim; ++i) diag(i) = rng.complex_in_disc(1.5);
    mats.push_back(u * diag.asDiagonal() * u.adjoint());
  }
  return OperatorTuple(std::move(mats), tol);
}

CommutingSample random_commuting(int dim, int d, std::uint64_t seed,
                                 const Tolerance& tol) {
  if (dim < 1 || d < 1) throw std::invalid_argument("random_commuting: bad dimensions");
  StableRng rng = StableRng::stream(seed, 1);

  // separated diagonal keeps the joint spectrum numerically resolvable
  std::vector<cxd> diag;
  while (static_cast<int>(diag.size()) < dim) {
    const cxd cand = rng.complex_in_disc(1.2);
    bool ok = true;
    for (const cxd& prev : diag)
      if (std::abs(cand - prev) < 0.3) ok = false;
    if (ok) diag.push_back(cand);
  }

  Matrix r = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    r(i, i) = diag[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < dim; ++j) r(i, j) = 0.4 * rng.complex_gaussian();
  }

  const int deg = std::min(3, dim - 1);
  std::vector<Matrix> upper;
  std::vector<std::vector<cxd>> coeffs(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    auto& c = coeffs[static_cast<std::size_t>(k)];
    double fade = 1.0;
    for (int j = 0; j <= deg; ++j) {
      c.push_back(fade * rng.complex_in_disc(1.0));
      fade *= 0.7;
    }
    Matrix acc = Matrix::Zero(dim, dim);
    Matrix power = Matrix::Identity(dim, dim);
    for (int j = 0; j <= deg; ++j) {
      acc += c[static_cast<std::size_t>(j)] * power;
      power = power * r;
    }
    upper.push_back(std::move(acc));
  }

  Matrix e(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) e(i, j) = rng.complex_gaussian();
  const Matrix s = Matrix::Identity(dim, dim) + (0.3 / e.norm()) * e;
  const Eigen::PartialPivLU<Matrix> lu(s);
  const Matrix sinv = lu.inverse();

  std::vector<Matrix> mats;
  mats.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) mats.push_back(s * upper[static_cast<std::size_t>(k)] * sinv);

  CommutingSample sample{OperatorTuple(std::move(mats), tol), {}};

  const double cluster = 1e-8;
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::VectorXcd pt(d);
    for (int k = 0; k < d; ++k) {
      cxd val = 0.0;
      cxd power = 1.0;
      for (int j = 0; j <= deg; ++j) {
        val += coeffs[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] * power;
        power *= diag[static_cast<std::size_t>(i)];
      }
      pt(k) = val;
    }
    bool dup = false;
    for (const auto& u2 : sample.joint_eigs)
      if ((pt - u2).lpNorm<Eigen::Infinity>() <= cluster) dup = true;
    if (!dup) sample.joint_eigs.push_back(pt);
  }
  return sample;
}

std::vector<GalleryEntry> gallery() {
  std::vector<GalleryEntry> out;
  const ExpectedFlags all_true{true, true, true, true, true, true};
  const ExpectedFlags none_past_commuting{true, false, false, false, false, false};

  {
    GalleryEntry e{"zero-d1", OperatorTuple({Matrix::Zero(2, 2)}), all_true, true, false,
                   "zero operator"};
    out.push_back(std::move(e));
  }
  {
    GalleryEntry e{"diag-normal-2",
                   OperatorTuple({diag2(cxd(1), cxd(2)), diag2(cxd(3), cxd(4))}), all_true,
                   true, false, "commuting real diagonals"};
    out.push_back(std::move(e));
  }
  {
    GalleryEntry e{"diag-normal-complex",
                   OperatorTuple({diag2(cxd(0, 1), cxd(2)), diag2(cxd(1, 1), cxd(3))}),
                   all_true, true, false, "commuting complex diagonals"};
    out.push_back(std::move(e));
  }
  {
    GalleryEntry e{"rand-normal-4", random_commuting_normal(4, 2, 7), all_true, true, false,
                   "seeded unitary conjugation of random diagonals"};
    out.push_back(std::move(e));
  }
  {
    GalleryEntry e{"joint-kernel-normal",
                   OperatorTuple({diag2(cxd(0), cxd(1)), diag2(cxd(0), cxd(2))}), all_true,
                   true, false, "normal tuple with joint kernel span(e_1)"};
    out.push_back(std::move(e));
  }
  {
    GalleryEntry e{"jordan2", OperatorTuple({jordan_block2()}), none_past_commuting, false,
                   false, "nilpotent Jordan block; T^2 = 0 is quasinormal, T is not"};
    out.push_back(std::move(e));
  }
  {
    Matrix t = Matrix::Zero(3, 3);
    t(1, 0) = 1.0;
    t(2, 1) = 2.0;
    GalleryEntry e{"weighted-shift3", OperatorTuple({t}), none_past_commuting, false, false,
                   "truncated weighted shift, strictly increasing weights"};
    out.push_back(std::move(e));
  }
  {
    Matrix t = Matrix::Zero(2, 2);
    t(1, 0) = 1.0;
    GalleryEntry e{"truncshift2", OperatorTuple({t}), none_past_commuting, false, false,
                   "e_1 -> e_2 truncated shift, [T*,T] = diag(1,-1)"};
    out.push_back(std::move(e));
  }
  {
    const Matrix j = jordan_block2();
    ExpectedFlags f{false, false, false, false, true, false};
    GalleryEntry e{"jordan-adjoint-pair", OperatorTuple({j, j.adjoint()}), f, false, false,
                   "noncommuting pair with Theta(I) = I: spherically qn only"};
    out.push_back(std::move(e));
  }
  {
    Matrix sz = diag2(cxd(1), cxd(-1));
    Matrix sx = Matrix::Zero(2, 2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    ExpectedFlags f{false, false, false, true, true, false};
    GalleryEntry e{"unitary-pair-zx", OperatorTuple({sz, sx}), f, false, false,
                   "noncommuting unitaries: jointly qn but not matricially"};
    out.push_back(std::move(e));
  }
  {
    Matrix t = Matrix::Zero(3, 3);
    t(0, 1) = 1.0;
    t(2, 2) = 5.0;
    GalleryEntry e{"nilpotent-plus-normal", OperatorTuple({t}), none_past_commuting, false,
                   false, "Jordan block direct sum with a normal 1x1 summand"};
    out.push_back(std::move(e));
  }
  {
    Matrix t1 = Matrix::Zero(4, 4);
    t1(0, 1) = 1.0;
    Matrix t2 = Matrix::Zero(4, 4);
    t2(2, 3) = 1.0;
    GalleryEntry e{"cross-zero-nilpotent", OperatorTuple({t1, t2}), none_past_commuting,
                   false, true, "block-disjoint nilpotents, T_i T_j = 0 for i != j"};
    out.push_back(std::move(e));
  }
  {
    Matrix t1 = Matrix::Zero(3, 3);
    t1(0, 0) = 1.0;
    t1(1, 1) = 2.0;
    Matrix t2 = Matrix::Zero(3, 3);
    t2(2, 2) = 3.0;
    GalleryEntry e{"cross-zero-normal", OperatorTuple({t1, t2}), all_true, true, true,
                   "diagonal tuple with disjoint supports"};
    out.push_back(std::move(e));
  }

  const struct {
    const char* name;
    ShiftKind kind;
    int d;
    int N;
  } shifts[] = {
      {"hardy-d2-N4", ShiftKind::hardy, 2, 4},
      {"hardy-d2-N6", ShiftKind::hardy, 2, 6},
      {"hardy-d3-N4", ShiftKind::hardy, 3, 4},
      {"hardy-d3-N6", ShiftKind::hardy, 3, 6},
      {"drury-arveson-d2-N4", ShiftKind::drury_arveson, 2, 4},
      {"bergman-d2-N4", ShiftKind::bergman, 2, 4},
      {"bergman-d3-N4", ShiftKind::bergman, 3, 4},
  };
  for (const auto& s : shifts) {
    GalleryEntry e{s.name, truncated_multishift(s.kind, s.d, s.N).mats,
                   none_past_commuting, false, false, "truncated weighted multishift"};
    out.push_back(std::move(e));
  }
  return out;
}

NestedPolarResiduals nested_polar_inheritance(ShiftKind kind, int d, int N,
                                              const Tolerance& tol) {
  const TruncatedMultishift small = truncated_multishift(kind, d, N, tol);
  const TruncatedMultishift big = truncated_multishift(kind, d, N + 1, tol);
  const Eigen::Index m = small.mats.dim();

  // graded order makes the small space a coordinate prefix of the big one
  for (Eigen::Index i = 0; i < m; ++i)
    if (big.basis[static_cast<std::size_t>(i)] != small.basis[static_cast<std::size_t>(i)])
      throw NumericFailure("nested_polar_inheritance: basis prefix mismatch");

  const PolarParts inner = spherical_polar(small.mats, tol);
  const PolarParts outer = spherical_polar(big.mats, tol);

  const Matrix proj_int = small.interior.projector();
  NestedPolarResiduals res;
  res.p_residual = ((inner.P - outer.P.topLeftCorner(m, m)) * proj_int).norm();
  const Matrix window = proj_int * inner.initial_projector;
  for (std::size_t k = 0; k < small.mats.d(); ++k) {
    const Matrix wc = outer.V.mat(k).topLeftCorner(m, m);
    res.v_residual = std::max(res.v_residual, ((inner.V.mat(k) - wc) * window).norm());
  }
  return res;
}

InteriorSqnResidual interior_sqn_residual(const TruncatedMultishift& ms, unsigned n,
                                          const Tolerance& tol) {
  const OperatorTuple tn = n == 1 ? ms.mats : power_circ(ms.mats, n, kDefaultCircPowerCap, tol);
  const Eigen::Index dim = tn.dim();
  const Matrix gram = theta_apply(tn, Matrix::Identity(dim, dim));

  const int window_deg = ms.N - 2 * static_cast<int>(n);
  InteriorSqnResidual out;
  if (window_deg < 0) return out;  // empty window: vacuous
  const SubspaceBasis window = ms.degree_subspace(window_deg);
  out.window_dim = window.m();
  const Matrix proj = window.projector();
  for (std::size_t k = 0; k < tn.d(); ++k) {
    const Matrix comm = tn.mat(k) * gram - gram * tn.mat(k);
    out.residual = std::max(out.residual, (comm * proj).norm());
  }
  return out;
}

}  // namespace optuple
