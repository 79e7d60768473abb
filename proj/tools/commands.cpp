#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "optuple/classify.hpp"
#include "optuple/extension.hpp"
#include "optuple/koszul.hpp"
#include "optuple/models.hpp"
#include "optuple/suites.hpp"
#include "tuple_io.hpp"

namespace optuple::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw io::ParseError("cannot write '" + out + "'");
  f << text;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "indeterminate";
  }
}

ordered_json check_json(const FlagCheck& c) {
  ordered_json j;
  j["flag"] = c.flag;
  j["verdict"] = verdict_name(c.verdict);
  j["residual"] = c.residual;
  j["threshold"] = c.threshold;
  return j;
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

OperatorTuple load_tuple(const std::string& input, const std::string& gallery_name,
                         std::string* name_out) {
  if (!gallery_name.empty()) {
    for (auto& entry : gallery())
      if (entry.name == gallery_name) {
        if (name_out) *name_out = entry.name;
        return entry.tuple;
      }
    throw io::ParseError("unknown gallery entry '" + gallery_name + "'");
  }
  const io::TupleFile file = io::parse_tuple_file(input);
  if (name_out) *name_out = file.name;
  return OperatorTuple(file.matrices);
}

std::vector<Eigen::VectorXcd> parse_grid_file(const std::string& path, std::size_t d) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::ParseError("cannot open '" + path + "'");
  ordered_json root;
  try {
    root = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw io::ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.contains("points") || !root["points"].is_array())
    throw io::ParseError("grid file: required key points (array)");
  std::vector<Eigen::VectorXcd> grid;
  for (const auto& pj : root["points"]) {
    if (!pj.is_array() || pj.size() != d)
      throw io::ParseError("grid file: each point needs d complex entries");
    Eigen::VectorXcd pt(static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) {
      const auto& zj = pj[k];
      if (!zj.is_array() || zj.size() != 2)
        throw io::ParseError("grid file: complex entries are [re, im] pairs");
      pt(static_cast<Eigen::Index>(k)) = cxd(zj[0].get<double>(), zj[1].get<double>());
    }
    grid.push_back(std::move(pt));
  }
  return grid;
}

}  // namespace

int cmd_classify(const ClassifyOptions& opt) {
  std::string name;
  OperatorTuple t = load_tuple(opt.input, opt.gallery_name, &name);
  Tolerance tol;
  tol.rel = opt.tol_rel;
  const ClassificationReport rep = classify(t, tol);

  if (opt.csv) {
    std::ostringstream os;
    os << "name,commuting,normal_tuple,matricially_qn,jointly_qn,spherically_qn,"
          "jointly_hyponormal,sqn_definition_residual,sqn_powers_residual,"
          "sqn_polar_residual,methods_agree,hierarchy_consistent\n";
    os << name << ',' << rep.commuting.flag << ',' << rep.normal_tuple.flag << ','
       << rep.matricially_qn.flag << ',' << rep.jointly_qn.flag << ','
       << rep.spherically_qn.flag << ',' << rep.jointly_hyponormal.flag << ','
       << csv_number(rep.sqn_definition.residual) << ','
       << csv_number(rep.sqn_powers.residual) << ','
       << csv_number(rep.sqn_polar.residual) << ',' << rep.methods_agree << ','
       << rep.hierarchy_consistent << '\n';
    emit(opt.out, os.str());
  } else {
    ordered_json j;
    if (!name.empty()) j["name"] = name;
    j["flags"]["commuting"] = rep.commuting.flag;
    j["flags"]["normal_tuple"] = rep.normal_tuple.flag;
    j["flags"]["matricially_qn"] = rep.matricially_qn.flag;
    j["flags"]["jointly_qn"] = rep.jointly_qn.flag;
    j["flags"]["spherically_qn"] = rep.spherically_qn.flag;
    j["flags"]["jointly_hyponormal"] = rep.jointly_hyponormal.flag;
    j["checks"]["commuting"] = check_json(rep.commuting);
    j["checks"]["normal_tuple"] = check_json(rep.normal_tuple);
    j["checks"]["matricially_qn"] = check_json(rep.matricially_qn);
    j["checks"]["jointly_qn"] = check_json(rep.jointly_qn);
    j["checks"]["spherically_qn"] = check_json(rep.spherically_qn);
    j["checks"]["jointly_hyponormal"] = check_json(rep.jointly_hyponormal);
    j["methods"]["definition"] = check_json(rep.sqn_definition);
    j["methods"]["powers"] = check_json(rep.sqn_powers);
    j["methods"]["polar"] = check_json(rep.sqn_polar);
    j["methods"]["agree"] = rep.methods_agree;
    j["hierarchy_consistent"] = rep.hierarchy_consistent;
    emit(opt.out, j.dump(2) + "\n");
  }
  return rep.hierarchy_consistent ? kExitOk : kExitInvariant;
}

int cmd_koszul(const KoszulOptions& opt) {
  OperatorTuple t = load_tuple(opt.input, "", nullptr);
  Tolerance tol;
  tol.rel = opt.tol_rel;
  if (!is_commuting(t, tol).commuting) {
    std::cerr << "koszul: tuple does not commute (residual "
              << is_commuting(t, tol).residual << ")\n";
    return kExitNonCommuting;
  }

  const std::vector<Eigen::VectorXcd> grid =
      opt.grid.empty() ? auto_grid(t, tol) : parse_grid_file(opt.grid, t.d());
  const auto verdicts = taylor_spectrum_grid(t, grid, tol);

  std::ostringstream os;
  for (std::size_t k = 1; k <= t.d(); ++k)
    os << "lambda_" << k << "_re,lambda_" << k << "_im,";
  os << "exact";
  for (std::size_t p = 0; p <= t.d(); ++p) os << ",h_" << p;
  os << '\n';
  for (const auto& v : verdicts) {
    for (Eigen::Index k = 0; k < v.lambda.size(); ++k)
      os << csv_number(v.lambda(k).real()) << ',' << csv_number(v.lambda(k).imag()) << ',';
    os << (v.exact ? 1 : 0);
    for (const auto h : v.betti) os << ',' << h;
    os << '\n';
  }
  emit(opt.out, os.str());
  return kExitOk;
}

int cmd_theorem_suite(const SuiteOptions& opt) {
  Tolerance tol;
  tol.rel = opt.tol_rel;
  const SuiteResult res = run_suite(opt.suite, opt.trials, opt.seed, tol, opt.threads);

  ordered_json j;
  j["suite"] = res.suite;
  j["trials"] = res.trials;
  j["failures"] = res.failures;
  j["notes"] = res.notes;
  emit(opt.out, j.dump(2) + "\n");

  if (res.suite == "conjecture") {
    ordered_json cj = ordered_json::array();
    for (const auto& cand : res.candidates) {
      ordered_json c;
      c["trial"] = cand.trial;
      c["stream_seed"] = cand.stream_seed;
      c["generator"] = cand.generator;
      c["sqn_residual_t"] = cand.sqn_residual_t;
      c["sqn_residual_tn"] = cand.sqn_residual_tn;
      c["hyponormal_residual"] = cand.hyponormal_residual;
      ordered_json mats = ordered_json::array();
      for (const auto& m : cand.mats) {
        ordered_json mj = ordered_json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          ordered_json row = ordered_json::array();
          for (Eigen::Index cidx = 0; cidx < m.cols(); ++cidx)
            row.push_back(ordered_json::array({m(r, cidx).real(), m(r, cidx).imag()}));
          mj.push_back(std::move(row));
        }
        mats.push_back(std::move(mj));
      }
      c["matrices"] = std::move(mats);
      cj.push_back(std::move(c));
    }
    const std::string path =
        opt.candidates_out.empty() ? "conjecture-candidates.json" : opt.candidates_out;
    std::ofstream f(path, std::ios::binary);
    if (f) f << cj.dump(2) << "\n";
    return kExitOk;  // candidates are for manual audit, never a failure
  }
  return res.passed() ? kExitOk : 1;
}

int cmd_extension_report(const ExtensionOptions& opt) {
  Tolerance tol;
  tol.rel = opt.tol_rel;
  OperatorTuple big = load_tuple(opt.input, "", nullptr);
  const Matrix cols = io::parse_subspace_file(opt.subspace, big.dim());

  ExtensionSplit split = [&] {
    try {
      return split_extension(big, SubspaceBasis(cols, tol), tol);
    } catch (const InvariantSubspaceError& e) {
      std::cerr << "extension-report: " << e.what() << " (residual " << e.residual << ")\n";
      std::exit(kExitNonInvariant);
    }
  }();

  ordered_json j;
  j["K"] = big.dim();
  j["m"] = split.h.m();
  j["invariance_residual"] = split.invariance_residual;

  const ThetaBlockReport tb = theta_block_check(split, tol);
  j["theta_block"]["offdiag_residual"] = tb.offdiag_residual;
  j["theta_block"]["threshold"] = tb.threshold;
  j["theta_block"]["block_diagonal"] = tb.block_diagonal;
  j["theta_block"]["normality_identity_residual"] = tb.normality_identity_residual;

  const DualReport dual = dual_tuple(split, tol);
  j["minimality"]["closure_dim"] = dual.closure_dim;
  j["minimality"]["is_minimal"] = dual.minimal;
  j["dual"]["adjoint_split_residual"] = dual.adjoint_split_residual;
  j["dual"]["spherically_qn"] = dual.dual_classification.spherically_qn.flag;
  j["dual"]["normal_tuple"] = dual.dual_classification.normal_tuple.flag;
  j["dual"]["compressed_pure"] = dual.compressed_pure;
  j["dual"]["dual_pure"] = dual.dual_pure;
  j["dual"]["compressed_normal_part_dim"] = dual.compressed_normal_part_dim;
  j["dual"]["dual_normal_part_dim"] = dual.dual_normal_part_dim;

  const InvertibilityReport inv = invertibility_equivalence_check(split, tol);
  j["invertibility"]["taylor_invertible_N"] = inv.taylor_invertible_big;
  j["invertibility"]["theta_N_invertible"] = inv.theta_big_invertible;
  j["invertibility"]["kernel_trivial_T"] = inv.kernel_trivial_compressed;
  j["invertibility"]["kernel_trivial_S"] = inv.kernel_trivial_dual;
  j["invertibility"]["left_taylor_invertible_T"] = inv.left_invertible_compressed;
  j["invertibility"]["left_taylor_invertible_S"] = inv.left_invertible_dual;
  j["invertibility"]["all_agree"] = inv.all_agree;
  j["invertibility"]["note"] =
      "closed-range clauses reduce to kernel statements at finite dimension";

  const FlagCheck sqn = spherically_quasinormal_via(split.compressed, SqnMethod::definition, tol);
  if (sqn.flag) {
    const PolarInheritance pi = polar_inheritance_check(split, tol);
    j["polar_inheritance"]["p_residual"] = pi.p_residual;
    j["polar_inheritance"]["v_residual"] = pi.v_residual;
  }

  j["kernel_orthogonality_residual"] = kernel_orthogonality_residual(split, tol);
  emit(opt.out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_gallery(const GalleryOptions& opt) {
  const auto entries = gallery();
  if (opt.list) {
    std::ostringstream os;
    for (const auto& e : entries) os << e.name << '\n';
    emit(opt.out, os.str());
    return kExitOk;
  }
  if (!opt.export_dir.empty()) {
    std::filesystem::create_directories(opt.export_dir);
    for (const auto& e : entries) {
      io::TupleFile f{e.name, e.tuple.mats(), e.expected};
      io::write_tuple_file(opt.export_dir + "/" + e.name + ".json", f);
    }
    return kExitOk;
  }
  for (const auto& e : entries)
    if (e.name == opt.name) {
      io::TupleFile f{e.name, e.tuple.mats(), e.expected};
      emit(opt.out, io::write_tuple_text(f));
      return kExitOk;
    }
  std::cerr << "gallery: unknown entry '" << opt.name << "'\n";
  return kExitParse;
}

}  // namespace optuple::cli
