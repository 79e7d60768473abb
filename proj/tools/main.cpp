#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "optuple/numeric.hpp"
#include "tuple_io.hpp"

namespace {

int default_threads() {
  if (const char* env = std::getenv("OPTUPLE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optuple: numerical analysis of commuting operator tuples"};
  app.require_subcommand(1);

  optuple::cli::ClassifyOptions copt;
  auto* cls = app.add_subcommand("classify", "classify a tuple into the quasinormal hierarchy");
  cls->add_option("input", copt.input, "tuple JSON file");
  cls->add_option("--gallery", copt.gallery_name, "use a named gallery entry instead of a file");
  cls->add_option("--tol", copt.tol_rel, "relative tolerance")->default_val(1e-10);
  cls->add_option("--out", copt.out, "output path (default stdout)");
  cls->add_flag("--csv", copt.csv, "CSV output instead of JSON");
  auto* cjson = cls->add_flag("--json", "JSON output (default)");
  (void)cjson;

  optuple::cli::KoszulOptions kopt;
  auto* kos = app.add_subcommand("koszul", "Taylor-spectrum grid scan via the Koszul complex");
  kos->add_option("input", kopt.input, "tuple JSON file")->required();
  kos->add_option("--grid", kopt.grid, "grid JSON file ({\"points\": [[[re,im],...],...]})");
  kos->add_flag("--auto", "auto grid: joint eigenvalues plus a perturbation ring (default)");
  kos->add_option("--tol", kopt.tol_rel, "relative tolerance")->default_val(1e-10);
  kos->add_option("--out", kopt.out, "CSV output path (default stdout)");

  optuple::cli::SuiteOptions sopt;
  sopt.threads = default_threads();
  auto* sui = app.add_subcommand("theorem-suite", "run a seeded theorem-verification suite");
  sui->add_option("--suite", sopt.suite, "suite name")->required();
  sui->add_option("--trials", sopt.trials, "number of trials")->default_val(200);
  sui->add_option("--seed", sopt.seed, "RNG seed")->default_val(1);
  sui->add_option("--tol", sopt.tol_rel, "relative tolerance")->default_val(1e-10);
  sui->add_option("--threads", sopt.threads, "worker threads (default OPTUPLE_THREADS or 1)");
  sui->add_option("--out", sopt.out, "JSON summary path (default stdout)");
  sui->add_option("--candidates-out", sopt.candidates_out,
                  "conjecture candidates path (default conjecture-candidates.json)");

  optuple::cli::ExtensionOptions eopt;
  auto* ext = app.add_subcommand("extension-report", "split a normal tuple over an invariant subspace");
  ext->add_option("input", eopt.input, "normal tuple JSON file")->required();
  ext->add_option("--subspace", eopt.subspace, "subspace JSON file")->required();
  ext->add_option("--tol", eopt.tol_rel, "relative tolerance")->default_val(1e-10);
  ext->add_option("--out", eopt.out, "JSON output path (default stdout)");

  optuple::cli::GalleryOptions gopt;
  auto* gal = app.add_subcommand("gallery", "list or export gallery tuples");
  gal->add_flag("--list", gopt.list, "list entry names");
  gal->add_option("--name", gopt.name, "export one entry");
  gal->add_option("--out", gopt.out, "output path (default stdout)");
  gal->add_option("--export-dir", gopt.export_dir, "export every entry to a directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cls->parsed()) {
      if (copt.input.empty() && copt.gallery_name.empty()) {
        std::cerr << "classify: provide an input file or --gallery NAME\n";
        return optuple::cli::kExitParse;
      }
      return optuple::cli::cmd_classify(copt);
    }
    if (kos->parsed()) return optuple::cli::cmd_koszul(kopt);
    if (sui->parsed()) return optuple::cli::cmd_theorem_suite(sopt);
    if (ext->parsed()) return optuple::cli::cmd_extension_report(eopt);
    if (gal->parsed()) return optuple::cli::cmd_gallery(gopt);
  } catch (const optuple::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return optuple::cli::kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return optuple::cli::kExitParse;
  } catch (const optuple::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return optuple::cli::kExitInvariant;
  }
  return optuple::cli::kExitParse;
}
