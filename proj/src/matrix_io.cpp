#include "coreep/matrix_io.hpp"

#include <cmath>
#include <fstream>

#include "coreep/errors.hpp"

namespace coreep {

nlohmann::json matrix_to_json(const CMatrix& m) {
    nlohmann::json data = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw MatrixIoError("matrix payload is not a JSON object");
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw MatrixIoError("matrix payload missing rows/cols/data");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw MatrixIoError("rows/cols must be integers");
    long long rows = j["rows"].get<long long>();
    long long cols = j["cols"].get<long long>();
    if (rows <= 0 || cols <= 0) throw MatrixIoError("rows/cols must be positive");
    const auto& data = j["data"];
    if (!data.is_array() || static_cast<long long>(data.size()) != rows * cols)
        throw MatrixIoError("data length does not equal rows*cols");
    CMatrix m(rows, cols);
    long long k = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index jj = 0; jj < cols; ++jj, ++k) {
            const auto& entry = data[static_cast<size_t>(k)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
                throw MatrixIoError("each data entry must be a [re, im] number pair");
            double re = entry[0].get<double>();
            double im = entry[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) throw MatrixIoError("non-finite entry in matrix data");
            m(i, jj) = Complex(re, im);
        }
    }
    return m;
}

CMatrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MatrixIoError("cannot open matrix file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MatrixIoError("invalid JSON in " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

void write_matrix(const std::string& path, const CMatrix& m) {
    std::ofstream out(path);
    if (!out) throw MatrixIoError("cannot open output file: " + path);
    out << matrix_to_json(m).dump(2) << "\n";
}

}  // namespace coreep
