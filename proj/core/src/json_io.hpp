#pragma once

// Private JSON <-> matrix conversion helpers shared by the config and report
// translation units. Wire conventions: complex scalars are [re, im] (bare
// numbers accepted as real on input), matrices are row-major nested arrays.

#include <string>

#include "json.hpp"
#include "qric/errors.hpp"
#include "qric/matrix.hpp"

namespace qric::jio {

using nlohmann::json;

inline json complex_to(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from(const json& j, const std::string& what) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw InvalidConfig(what + ": expected a number or [re, im]");
}

inline json matrix_to(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
        throw InvalidConfig(what + ": expected a nonempty nested array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw InvalidConfig(what + ": rows have unequal lengths");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_from(row[static_cast<std::size_t>(c)],
                                   what + "[" + std::to_string(r) + "][" +
                                       std::to_string(c) + "]");
    }
    return m;
}

inline json real_vector_to(const RealVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

inline RealVector real_vector_from(const json& j, const std::string& what) {
    if (!j.is_array()) throw InvalidConfig(what + ": expected an array of numbers");
    RealVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw InvalidConfig(what + "[" + std::to_string(i) + "]: expected a number");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

}  // namespace qric::jio
