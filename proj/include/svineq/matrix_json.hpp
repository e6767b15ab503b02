#pragma once

#include <svineq/error.hpp>
#include <svineq/matrix.hpp>

#include <json.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace svineq {

using Json = nlohmann::ordered_json;

namespace detail {

inline double json_number(const Json& v, const char* where) {
    if (!v.is_number()) {
        throw ParseError(ParseErrorKind::schema, std::string(where) + " is not a number");
    }
    double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ParseError(ParseErrorKind::non_finite, std::string(where) + " is not finite");
    }
    return x;
}

inline std::size_t json_dim(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(ParseErrorKind::schema, std::string("missing \"") + key + "\"");
    }
    if (!it->is_number_integer() || it->get<long long>() < 1) {
        throw ParseError(ParseErrorKind::schema, std::string("\"") + key + "\" must be an integer >= 1");
    }
    return static_cast<std::size_t>(it->get<long long>());
}

} // namespace detail

/// Matrix interchange object:
/// {"rows":m,"cols":n,"field":"real"|"complex","data":[[...],...]}
/// Real entries are JSON numbers, complex entries are [re, im] pairs.
inline Json to_json(const Matrix& m) {
    Json data = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Scalar& z = m(i, j);
            if (m.field() == Field::real) {
                row.push_back(z.real());
            } else {
                row.push_back(Json::array({z.real(), z.imag()}));
            }
        }
        data.push_back(std::move(row));
    }
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["field"] = to_string(m.field());
    out["data"] = std::move(data);
    return out;
}

inline std::string serialize_matrix(const Matrix& m) { return to_json(m).dump(); }

inline Matrix matrix_from_json(const Json& obj) {
    if (!obj.is_object()) {
        throw ParseError(ParseErrorKind::schema, "matrix must be a JSON object");
    }
    const std::size_t rows = detail::json_dim(obj, "rows");
    const std::size_t cols = detail::json_dim(obj, "cols");

    auto field_it = obj.find("field");
    if (field_it == obj.end() || !field_it->is_string()) {
        throw ParseError(ParseErrorKind::schema, "\"field\" must be \"real\" or \"complex\"");
    }
    Field field;
    if (*field_it == "real") {
        field = Field::real;
    } else if (*field_it == "complex") {
        field = Field::complex;
    } else {
        throw ParseError(ParseErrorKind::schema, "unknown field " + field_it->dump());
    }

    auto data_it = obj.find("data");
    if (data_it == obj.end() || !data_it->is_array()) {
        throw ParseError(ParseErrorKind::schema, "\"data\" must be an array of rows");
    }
    const Json& data = *data_it;
    if (data.size() != rows) {
        throw ParseError(ParseErrorKind::wrong_length,
                         "expected " + std::to_string(rows) + " rows, got " + std::to_string(data.size()));
    }

    std::vector<Scalar> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = data[i];
        if (!row.is_array()) {
            throw ParseError(ParseErrorKind::schema, "row " + std::to_string(i) + " is not an array");
        }
        if (row.size() != cols) {
            throw ParseError(ParseErrorKind::wrong_length, "row " + std::to_string(i) + " has " +
                                                               std::to_string(row.size()) + " entries, expected " +
                                                               std::to_string(cols));
        }
        for (const Json& e : row) {
            if (field == Field::real) {
                if (e.is_array()) {
                    if (e.size() == 2 && e[1].is_number() && detail::json_number(e[1], "imaginary part") != 0.0) {
                        throw ParseError(ParseErrorKind::imaginary_in_real, "complex entry in a real matrix");
                    }
                    throw ParseError(ParseErrorKind::schema, "real entries must be plain numbers");
                }
                entries.emplace_back(detail::json_number(e, "entry"), 0.0);
            } else {
                if (!e.is_array() || e.size() != 2) {
                    throw ParseError(ParseErrorKind::schema, "complex entries must be [re, im] pairs");
                }
                double re = detail::json_number(e[0], "real part");
                double im = detail::json_number(e[1], "imaginary part");
                entries.emplace_back(re, im);
            }
        }
    }
    return Matrix(rows, cols, field, std::move(entries));
}

inline Matrix parse_matrix(std::string_view text) {
    Json obj;
    try {
        obj = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(ParseErrorKind::malformed_json, e.what());
    } catch (const nlohmann::json::out_of_range& e) {
        // number literal overflowing a double
        throw ParseError(ParseErrorKind::non_finite, e.what());
    }
    return matrix_from_json(obj);
}

} // namespace svineq
