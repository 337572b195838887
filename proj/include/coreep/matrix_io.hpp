// Matrix file format shared by every CLI command: a JSON object
//   {"rows": r, "cols": c, "data": [[re, im], ...]}
// with data row-major of length r*c. Parsing rejects length mismatches and
// non-finite numbers.

#pragma once

#include <string>

#include <json.hpp>

#include "coreep/matrix.hpp"

namespace coreep {

nlohmann::json matrix_to_json(const CMatrix& m);

/// Throws MatrixIoError on malformed payloads.
CMatrix matrix_from_json(const nlohmann::json& j);

CMatrix read_matrix(const std::string& path);
void write_matrix(const std::string& path, const CMatrix& m);

}  // namespace coreep
