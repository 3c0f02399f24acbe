#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sympert/core.hpp"

namespace sympert {

/// MatrixFile: {"n": n, "data": [[...2n numbers...], ... 2n rows]}.
/// Throws ParseError on malformed JSON, a wrong shape or non-finite numbers.
Matrix matrix_from_json(const nlohmann::json& doc);
Matrix parse_matrix(const std::string& text);
Matrix read_matrix_file(const std::filesystem::path& path);

/// Rows of numbers; doubles are written in their shortest round-trip form.
nlohmann::json matrix_rows_json(const Matrix& m);
nlohmann::json matrix_to_json(const Matrix& m);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

}  // namespace sympert
