#ifndef RIESZLAB_TOOLS_CLI_IO_HPP
#define RIESZLAB_TOOLS_CLI_IO_HPP

// Matrix JSON and sample CSV formats of the riesz_lab command line tool.
//
// Matrix JSON: {"beta": 2, "rows": 2, "cols": 2,
//               "entries": [[c0, c1], [c0, c1], ...]}   (row-major,
// one array of beta real components per entry).

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rieszlab/rieszlab.hpp"

namespace rieszlab::cli {

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline DivisionMatrix matrix_from_json(const nlohmann::json& j) {
    require(j.is_object(), "matrix JSON must be an object");
    for (const char* key : {"beta", "rows", "cols", "entries"})
        require(j.contains(key), std::string("matrix JSON is missing \"") + key + "\"");
    const AlgebraTag tag(j.at("beta").get<int>());
    const long rows = j.at("rows").get<long>(), cols = j.at("cols").get<long>();
    require(rows >= 1 && cols >= 1, "matrix JSON needs rows, cols >= 1");
    const auto& e = j.at("entries");
    require(e.is_array() && static_cast<long>(e.size()) == rows * cols,
            "matrix JSON \"entries\" must hold rows*cols entries");
    DivisionMatrix m(tag, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (long k = 0; k < rows * cols; ++k) {
        const auto& comp = e.at(static_cast<std::size_t>(k));
        require(comp.is_array() && static_cast<int>(comp.size()) == tag.beta(),
                "each matrix entry must be an array of beta real components");
        std::vector<double> c = comp.get<std::vector<double>>();
        m(static_cast<std::size_t>(k / cols), static_cast<std::size_t>(k % cols)) = DivisionScalar(tag, c);
    }
    return m;
}

inline DivisionMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open matrix file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw DomainError("matrix file " + path + " is not valid JSON: " + ex.what());
    }
    return matrix_from_json(j);
}

inline nlohmann::json matrix_entries_json(const DivisionMatrix& m) {
    nlohmann::json e = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            nlohmann::json c = nlohmann::json::array();
            for (int k = 0; k < m.beta(); ++k) c.push_back(m(i, j)[k]);
            e.push_back(c);
        }
    return e;
}

// One sampled matrix with its derived columns.
struct SampleRow {
    DivisionMatrix matrix;
    double logdet;
    std::vector<double> eigenvalues;  // empty unless requested
};

inline std::string csv_header(AlgebraTag tag, std::size_t m, bool with_eigen) {
    std::ostringstream os;
    os << "draw_index";
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const int comps = i == j ? 1 : tag.beta();
            for (int c = 0; c < comps; ++c) os << ",x_" << i << '_' << j << '_' << c;
        }
    os << ",logdet";
    if (with_eigen)
        for (std::size_t k = 0; k < m; ++k) os << ",eig_" << k;
    return os.str();
}

inline std::string csv_row(std::size_t index, const SampleRow& r) {
    std::ostringstream os;
    os << index;
    const DivisionMatrix& x = r.matrix;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const int comps = i == j ? 1 : x.beta();
            for (int c = 0; c < comps; ++c) os << ',' << fmt17(x(i, j)[c]);
        }
    os << ',' << fmt17(r.logdet);
    for (double e : r.eigenvalues) os << ',' << fmt17(e);
    return os.str();
}

inline nlohmann::json json_row(std::size_t index, const SampleRow& r) {
    nlohmann::json j;
    j["draw_index"] = index;
    j["beta"] = r.matrix.beta();
    j["rows"] = r.matrix.rows();
    j["cols"] = r.matrix.cols();
    j["entries"] = matrix_entries_json(r.matrix);
    j["logdet"] = r.logdet;
    if (!r.eigenvalues.empty()) j["eigenvalues"] = r.eigenvalues;
    return j;
}

}  // namespace rieszlab::cli

#endif
