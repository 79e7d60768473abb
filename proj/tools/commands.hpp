#pragma once

#include <cstdint>
#include <string>

namespace optuple::cli {

// exit codes shared by every subcommand: 0 success, 2 parse/contract error,
// 3 internal invariant violation, 4 non-commuting input, 5 non-invariant
// subspace
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitNonCommuting = 4;
inline constexpr int kExitNonInvariant = 5;

struct ClassifyOptions {
  std::string input;         // tuple file path, or empty when gallery_name set
  std::string gallery_name;
  double tol_rel = 1e-10;
  std::string out;           // empty = stdout
  bool csv = false;
};
int cmd_classify(const ClassifyOptions& opt);

struct KoszulOptions {
  std::string input;
  std::string grid;          // grid file; empty = auto
  std::string out;           // CSV path, empty = stdout
  double tol_rel = 1e-10;
};
int cmd_koszul(const KoszulOptions& opt);

struct SuiteOptions {
  std::string suite;
  int trials = 200;
  std::uint64_t seed = 1;
  double tol_rel = 1e-10;
  int threads = 1;
  std::string out;               // JSON summary, empty = stdout
  std::string candidates_out;    // conjecture candidates (JSON)
};
int cmd_theorem_suite(const SuiteOptions& opt);

struct ExtensionOptions {
  std::string input;     // normal tuple file
  std::string subspace;  // subspace file
  double tol_rel = 1e-10;
  std::string out;
};
int cmd_extension_report(const ExtensionOptions& opt);

struct GalleryOptions {
  bool list = false;
  std::string name;        // export one entry
  std::string out;
  std::string export_dir;  // export all entries
};
int cmd_gallery(const GalleryOptions& opt);

}  // namespace optuple::cli
