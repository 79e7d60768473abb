#include "tuple_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace optuple::io {

using ordered_json = nlohmann::ordered_json;

namespace {

double finite_number(const ordered_json& j, const char* where) {
  if (!j.is_number()) throw ParseError(std::string(where) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(where) + ": NaN/Inf rejected");
  return v;
}

cxd parse_complex(const ordered_json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(std::string(where) + ": complex entries are [re, im] pairs");
  return {finite_number(j[0], where), finite_number(j[1], where)};
}

ordered_json complex_json(const cxd& z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json flags_json(const ExpectedFlags& f) {
  ordered_json j;
  j["commuting"] = f.commuting;
  j["normal_tuple"] = f.normal_tuple;
  j["matricially_qn"] = f.matricially_qn;
  j["jointly_qn"] = f.jointly_qn;
  j["spherically_qn"] = f.spherically_qn;
  j["jointly_hyponormal"] = f.jointly_hyponormal;
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TupleFile parse_tuple_text(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("tuple file: top level must be an object");
  if (!root.contains("d") || !root.contains("dim") || !root.contains("matrices"))
    throw ParseError("tuple file: required keys d, dim, matrices");

  TupleFile out;
  if (root.contains("name")) out.name = root["name"].get<std::string>();
  const auto d = root["d"].get<std::int64_t>();
  const auto dim = root["dim"].get<std::int64_t>();
  if (d < 1 || dim < 1) throw ParseError("tuple file: d and dim must be positive");

  const auto& mats = root["matrices"];
  if (!mats.is_array() || static_cast<std::int64_t>(mats.size()) != d)
    throw ParseError("tuple file: matrices must be an array of length d");
  for (const auto& mj : mats) {
    if (!mj.is_array() || static_cast<std::int64_t>(mj.size()) != dim)
      throw ParseError("tuple file: each matrix must have dim rows");
    Matrix m(dim, dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      const auto& row = mj[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<std::int64_t>(row.size()) != dim)
        throw ParseError("tuple file: each row must have dim entries");
      for (std::int64_t j = 0; j < dim; ++j)
        m(i, j) = parse_complex(row[static_cast<std::size_t>(j)], "matrix entry");
    }
    out.matrices.push_back(std::move(m));
  }

  if (root.contains("expected_flags")) {
    const auto& fj = root["expected_flags"];
    ExpectedFlags f;
    f.commuting = fj.value("commuting", false);
    f.normal_tuple = fj.value("normal_tuple", false);
    f.matricially_qn = fj.value("matricially_qn", false);
    f.jointly_qn = fj.value("jointly_qn", false);
    f.spherically_qn = fj.value("spherically_qn", false);
    f.jointly_hyponormal = fj.value("jointly_hyponormal", false);
    out.expected = f;
  }
  return out;
}

TupleFile parse_tuple_file(const std::string& path) { return parse_tuple_text(slurp(path)); }

std::string write_tuple_text(const TupleFile& file) {
  ordered_json root;
  if (!file.name.empty()) root["name"] = file.name;
  root["d"] = file.matrices.size();
  root["dim"] = file.matrices.empty() ? 0 : file.matrices[0].rows();
  ordered_json mats = ordered_json::array();
  for (const auto& m : file.matrices) {
    ordered_json mj = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
      mj.push_back(std::move(row));
    }
    mats.push_back(std::move(mj));
  }
  root["matrices"] = std::move(mats);
  if (file.expected) root["expected_flags"] = flags_json(*file.expected);
  return root.dump(2) + "\n";
}

void write_tuple_file(const std::string& path, const TupleFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << write_tuple_text(file);
}

Matrix parse_subspace_file(const std::string& path, Eigen::Index expected_dim) {
  ordered_json root;
  try {
    root = ordered_json::parse(slurp(path));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.contains("dim") || !root.contains("m") || !root.contains("columns"))
    throw ParseError("subspace file: required keys dim, m, columns");
  const auto dim = root["dim"].get<std::int64_t>();
  const auto m = root["m"].get<std::int64_t>();
  if (expected_dim > 0 && dim != expected_dim)
    throw ParseError("subspace file: dim does not match the tuple");
  if (m < 0 || m > dim) throw ParseError("subspace file: need 0 <= m <= dim");
  const auto& cols = root["columns"];
  if (!cols.is_array() || static_cast<std::int64_t>(cols.size()) != m)
    throw ParseError("subspace file: columns must be an array of length m");
  Matrix out(dim, m);
  for (std::int64_t c = 0; c < m; ++c) {
    const auto& col = cols[static_cast<std::size_t>(c)];
    if (!col.is_array() || static_cast<std::int64_t>(col.size()) != dim)
      throw ParseError("subspace file: each column must have dim entries");
    for (std::int64_t i = 0; i < dim; ++i)
      out(i, c) = parse_complex(col[static_cast<std::size_t>(i)], "subspace entry");
  }
  return out;
}

std::string write_subspace_text(const Matrix& columns) {
  ordered_json root;
  root["dim"] = columns.rows();
  root["m"] = columns.cols();
  ordered_json cols = ordered_json::array();
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    ordered_json col = ordered_json::array();
    for (Eigen::Index i = 0; i < columns.rows(); ++i)
      col.push_back(complex_json(columns(i, c)));
    cols.push_back(std::move(col));
  }
  root["columns"] = std::move(cols);
  return root.dump(2) + "\n";
}

}  // namespace optuple::io
