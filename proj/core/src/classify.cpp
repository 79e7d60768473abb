#include "optuple/classify.hpp"

#include <cmath>
#include <mutex>

#include "optuple/models.hpp"
#include "optuple/polar.hpp"
#include "optuple/theta.hpp"

namespace optuple {

FlagCheck band_check(double residual, double threshold) {
  FlagCheck c;
  c.residual = residual;
  c.threshold = threshold;
  if (residual < threshold / 10.0)
    c.verdict = Verdict::yes;
  else if (residual > threshold * 10.0)
    c.verdict = Verdict::no;
  else
    c.verdict = Verdict::indeterminate;
  c.flag = c.verdict == Verdict::yes;
  return c;
}

namespace {

double commutator_norm(const Matrix& a, const Matrix& b) {
  return (a * b - b * a).norm();
}

// dn x dn Hermitian block matrix with block (i, j) = [T_j*, T_i],
// rows indexed by the second commutator argument.
Matrix hyponormal_block_matrix(const OperatorTuple& t) {
  const Eigen::Index n = t.dim();
  const Eigen::Index d = static_cast<Eigen::Index>(t.d());
  Matrix block(d * n, d * n);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const Matrix& ti = t.mat(static_cast<std::size_t>(i));
      const Matrix& tj = t.mat(static_cast<std::size_t>(j));
      block.block(i * n, j * n, n, n) = tj.adjoint() * ti - ti * tj.adjoint();
    }
  return block;
}

void upgrade(FlagCheck& weaker, const FlagCheck& stronger) {
  if (stronger.flag) {
    weaker.flag = true;
    weaker.verdict = Verdict::yes;
  }
}

}  // namespace

FlagCheck spherically_quasinormal_via(const OperatorTuple& t, SqnMethod method,
                                      const Tolerance& tol) {
  const Eigen::Index n = t.dim();
  const double m = std::max(1.0, t.max_norm());
  switch (method) {
    case SqnMethod::definition: {
      const Matrix gram = theta_apply(t, Matrix::Identity(n, n));
      double r = 0.0;
      for (std::size_t k = 0; k < t.d(); ++k)
        r = std::max(r, commutator_norm(t.mat(k), gram));
      return band_check(r, tol.threshold(m * m * m));
    }
    case SqnMethod::powers: {
      // per-n verdicts at scale m^(2n); the reported residual is the raw max
      const MomentCheck mc = moment_check(t, 3, tol);
      const FlagCheck c2 = band_check(mc.residuals[0], mc.thresholds[0]);
      const FlagCheck c3 = band_check(mc.residuals[1], mc.thresholds[1]);
      FlagCheck c;
      c.residual = mc.residual_23;
      c.threshold = std::max(mc.thresholds[0], mc.thresholds[1]);
      if (c2.verdict == Verdict::yes && c3.verdict == Verdict::yes)
        c.verdict = Verdict::yes;
      else if (c2.verdict == Verdict::no || c3.verdict == Verdict::no)
        c.verdict = Verdict::no;
      else
        c.verdict = Verdict::indeterminate;
      c.flag = c.verdict == Verdict::yes;
      return c;
    }
    case SqnMethod::polar: {
      const PolarParts parts = spherical_polar(t, tol);
      const ConditionVi vi = check_condition_vi(parts, tol);
      return band_check(vi.residual, vi.threshold);
    }
  }
  throw std::invalid_argument("spherically_quasinormal_via: unknown method");
}

ClassificationReport classify(const OperatorTuple& t, const Tolerance& tol) {
  ClassificationReport rep;
  const double m = std::max(1.0, t.max_norm());
  const double scale2 = m * m;
  const double scale3 = m * m * m;

  const CommutingVerdict cv = is_commuting(t, tol);
  rep.commuting = band_check(cv.residual, cv.threshold);

  // normal tuple: commuting with vanishing self-commutators
  double self_res = 0.0;
  for (std::size_t k = 0; k < t.d(); ++k)
    self_res = std::max(self_res, commutator_norm(t.mat(k).adjoint(), t.mat(k)));
  rep.normal_tuple = band_check(std::max(self_res, cv.residual), tol.threshold(scale2));

  double mat_res = 0.0;
  for (std::size_t i = 0; i < t.d(); ++i)
    for (std::size_t j = 0; j < t.d(); ++j)
      for (std::size_t k = 0; k < t.d(); ++k)
        mat_res = std::max(mat_res,
                           commutator_norm(t.mat(i), t.mat(j).adjoint() * t.mat(k)));
  rep.matricially_qn = band_check(mat_res, tol.threshold(scale3));

  double joint_res = 0.0;
  for (std::size_t i = 0; i < t.d(); ++i)
    for (std::size_t j = 0; j < t.d(); ++j)
      joint_res = std::max(joint_res,
                           commutator_norm(t.mat(i), t.mat(j).adjoint() * t.mat(j)));
  rep.jointly_qn = band_check(joint_res, tol.threshold(scale3));

  rep.sqn_definition = spherically_quasinormal_via(t, SqnMethod::definition, tol);
  rep.sqn_powers = spherically_quasinormal_via(t, SqnMethod::powers, tol);
  rep.sqn_polar = spherically_quasinormal_via(t, SqnMethod::polar, tol);
  rep.spherically_qn = rep.sqn_definition;

  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hyponormal_block_matrix(t));
    const double lambda_min = es.eigenvalues()(0);
    rep.jointly_hyponormal = band_check(std::max(0.0, -lambda_min), tol.threshold(scale2));
  }

  rep.hierarchy_consistent = !(rep.normal_tuple.flag && !rep.matricially_qn.flag) &&
                             !(rep.matricially_qn.flag && !rep.jointly_qn.flag) &&
                             !(rep.jointly_qn.flag && !rep.spherically_qn.flag);

  upgrade(rep.matricially_qn, rep.normal_tuple);
  upgrade(rep.jointly_qn, rep.matricially_qn);
  upgrade(rep.spherically_qn, rep.jointly_qn);

  const bool determinate = rep.sqn_definition.verdict != Verdict::indeterminate &&
                           rep.sqn_powers.verdict != Verdict::indeterminate &&
                           rep.sqn_polar.verdict != Verdict::indeterminate;
  rep.methods_agree = !determinate ||
                      (rep.sqn_definition.flag == rep.sqn_powers.flag &&
                       rep.sqn_powers.flag == rep.sqn_polar.flag);
  return rep;
}

SubspaceBasis normal_part_subspace(const OperatorTuple& t, const Tolerance& tol) {
  if (is_commuting(t, tol).commuting == false)
    throw std::invalid_argument("normal_part_subspace: tuple must commute");
  const Eigen::Index n = t.dim();
  const std::size_t d = t.d();

  // seed subspace: joint kernel of [T_k*, T_k] and [T_i, T_j*], i < j
  std::vector<Matrix> comms;
  for (std::size_t k = 0; k < d; ++k)
    comms.push_back(t.mat(k).adjoint() * t.mat(k) - t.mat(k) * t.mat(k).adjoint());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      comms.push_back(t.mat(i) * t.mat(j).adjoint() - t.mat(j).adjoint() * t.mat(i));
  Matrix stacked(static_cast<Eigen::Index>(comms.size()) * n, n);
  for (std::size_t c = 0; c < comms.size(); ++c)
    stacked.middleRows(static_cast<Eigen::Index>(c) * n, n) = comms[c];
  Matrix basis = null_space(stacked, tol);

  // shrink to joint invariance under every T_k and T_k*
  while (basis.cols() > 0) {
    const Matrix proj_out = Matrix::Identity(n, n) - basis * basis.adjoint();
    Matrix maps(static_cast<Eigen::Index>(2 * d) * n, basis.cols());
    for (std::size_t k = 0; k < d; ++k) {
      maps.middleRows(static_cast<Eigen::Index>(2 * k) * n, n) = proj_out * (t.mat(k) * basis);
      maps.middleRows(static_cast<Eigen::Index>(2 * k + 1) * n, n) =
          proj_out * (t.mat(k).adjoint() * basis);
    }
    const Matrix refine = null_space(maps, tol);
    if (refine.cols() == basis.cols()) break;
    basis = basis * refine;
  }

  // fixed-point validation
  if (basis.cols() > 0) {
    const double thr = tol.threshold(std::max(1.0, t.max_norm())) * 1e2;
    const Matrix proj_out = Matrix::Identity(n, n) - basis * basis.adjoint();
    for (std::size_t k = 0; k < d; ++k) {
      if ((proj_out * (t.mat(k) * basis)).norm() > thr ||
          (proj_out * (t.mat(k).adjoint() * basis)).norm() > thr)
        throw NumericFailure("normal_part_subspace: fixed point is not invariant");
    }
    std::vector<Matrix> comp(d);
    for (std::size_t k = 0; k < d; ++k) comp[k] = basis.adjoint() * t.mat(k) * basis;
    const double cthr = tol.threshold(std::max(1.0, t.max_norm() * t.max_norm())) * 1e2;
    for (std::size_t i = 0; i < d; ++i) {
      if (commutator_norm(comp[i].adjoint(), comp[i]) > cthr)
        throw NumericFailure("normal_part_subspace: compression is not normal");
      for (std::size_t j = i + 1; j < d; ++j)
        if (commutator_norm(comp[i], comp[j]) > cthr)
          throw NumericFailure("normal_part_subspace: compression does not commute");
    }
  }
  return SubspaceBasis(std::move(basis), tol);
}

ConjectureLog conjecture_search(int dim, int d, unsigned n, int trials,
                                std::uint64_t seed, const Tolerance& tol,
                                int nthreads) {
  if (trials < 1) throw std::invalid_argument("conjecture_search: trials must be >= 1");
  if (dim < 1 || d < 1) throw std::invalid_argument("conjecture_search: bad dimensions");

  ConjectureLog log;
  log.trials = trials;
  std::mutex mu;

  parallel_for_indexed(static_cast<std::size_t>(trials), nthreads, [&](std::size_t i) {
    const std::uint64_t stream = seed + i;
    OperatorTuple t = [&]() -> OperatorTuple {
      switch (i % 3) {
        case 0:
          return random_commuting_normal(dim, d, stream);
        case 1:
          return random_commuting(dim, d, stream).tuple;
        default: {
          // normal tuple with a tiny Hermitian perturbation: stays inside
          // the commuting/hyponormal thresholds but off exact zero
          OperatorTuple base = random_commuting_normal(dim, d, stream);
          StableRng rng = StableRng::stream(stream, 17);
          std::vector<Matrix> mats;
          for (std::size_t k = 0; k < base.d(); ++k) {
            Matrix g(dim, dim);
            for (Eigen::Index r = 0; r < dim; ++r)
              for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = rng.complex_gaussian();
            mats.push_back(base.mat(k) + 1e-13 * (g + g.adjoint()));
          }
          return OperatorTuple(std::move(mats), tol);
        }
      }
    }();

    const ClassificationReport rep = classify(t, tol);
    if (!rep.commuting.flag || !rep.jointly_hyponormal.flag) return;

    const OperatorTuple tn = power_circ(t, n);
    const FlagCheck sqn_tn = spherically_quasinormal_via(tn, SqnMethod::definition, tol);
    const FlagCheck sqn_t = rep.sqn_definition;

    std::lock_guard<std::mutex> lock(mu);
    ++log.commuting_hyponormal;
    if (sqn_tn.verdict == Verdict::yes) {
      ++log.power_sqn;
      if (sqn_t.verdict == Verdict::no) {
        ConjectureCandidate cand;
        cand.trial = i;
        cand.stream_seed = stream;
        cand.generator = i % 3 == 0 ? "normal" : (i % 3 == 1 ? "triangular" : "perturbed");
        cand.sqn_residual_t = sqn_t.residual;
        cand.sqn_residual_tn = sqn_tn.residual;
        cand.hyponormal_residual = rep.jointly_hyponormal.residual;
        cand.mats = t.mats();
        log.candidates.push_back(std::move(cand));
      }
    }
  });
  return log;
}

}  // namespace optuple
