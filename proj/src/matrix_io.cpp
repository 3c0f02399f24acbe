#include "sympert/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sympert {

Matrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("data")) {
    throw ParseError("matrix file: expected an object with \"n\" and \"data\"");
  }
  const auto& jn = doc["n"];
  if (!jn.is_number_integer() || jn.get<long long>() <= 0) throw ParseError("matrix file: \"n\" must be a positive integer");
  const auto n = static_cast<std::size_t>(jn.get<long long>());
  const auto& rows = doc["data"];
  if (!rows.is_array() || rows.size() != 2 * n) {
    throw ParseError("matrix file: \"data\" must hold 2n = " + std::to_string(2 * n) + " rows");
  }
  std::vector<double> values;
  values.reserve(4 * n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 2 * n) {
      throw ParseError("matrix file: every row must hold 2n = " + std::to_string(2 * n) + " numbers");
    }
    for (const auto& x : row) {
      if (!x.is_number()) throw ParseError("matrix file: non-numeric entry");
      const double v = x.get<double>();
      if (!std::isfinite(v)) throw ParseError("matrix file: non-finite entry");
      values.push_back(v);
    }
  }
  return {2 * n, 2 * n, std::move(values)};
}

Matrix parse_matrix(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
  return matrix_from_json(doc);
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

nlohmann::json matrix_rows_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  return {{"n", m.rows() / 2}, {"data", matrix_rows_json(m)}};
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << matrix_to_json(m).dump(1) << '\n';
}

}  // namespace sympert
