#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optuple/models.hpp"
#include "optuple/operator_tuple.hpp"

namespace optuple::io {

/// Thrown for malformed input files (bad shapes, NaN/Inf entries, parse
/// failures); the CLI maps it to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON tuple file: complex entries as [re, im] pairs, matrices as
/// [d][dim][dim] arrays. Optional name and expected-flags block.
struct TupleFile {
  std::string name;
  std::vector<Matrix> matrices;
  std::optional<ExpectedFlags> expected;
};

TupleFile parse_tuple_file(const std::string& path);
TupleFile parse_tuple_text(const std::string& text);

/// Canonical serialization: fixed key order, two-space indent, trailing
/// newline. write(parse(f)) is byte-identical for canonically formatted
/// files.
std::string write_tuple_text(const TupleFile& file);
void write_tuple_file(const std::string& path, const TupleFile& file);

/// Subspace file: {"dim": n, "m": m, "columns": [m][n] of [re, im]}.
Matrix parse_subspace_file(const std::string& path, Eigen::Index expected_dim);

std::string write_subspace_text(const Matrix& columns);

}  // namespace optuple::io
