#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "gpl/matrix.hpp"

namespace gpl {

using Json = nlohmann::json;

// Triplet serialization {rows, cols, entries: [[r, c, "a/b", "c/d"], ...]}
// with real and imaginary parts as reduced fraction strings.
inline Json to_json(const Mat& m) {
    Json entries = Json::array();
    for (int j = 0; j < m.cols(); ++j)
        for (const auto& [r, v] : m.col(j))
            entries.push_back(Json::array({r, j, to_string(v.re), to_string(v.im)}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline Mat mat_from_json(const Json& j) {
    require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("entries"),
            err::ParseError, "matrix JSON needs rows, cols, entries");
    Mat m(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& e : j.at("entries")) {
        require(e.is_array() && e.size() == 4, err::ParseError,
                "matrix entry must be [row, col, re, im]");
        const int r = e[0].get<int>();
        const int c = e[1].get<int>();
        Scalar v(parse_rational(e[2].get<std::string>()), parse_rational(e[3].get<std::string>()));
        require(r >= 0 && r < m.rows() && c >= 0 && c < m.cols(), err::ParseError,
                "matrix entry index out of range");
        require(m.at(r, c).is_zero(), err::ParseError, "duplicate matrix entry");
        m.set(r, c, v);
    }
    return m;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), err::IoError, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(err::ParseError, std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    require(out.good(), err::IoError, "cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

} // namespace gpl
