#ifndef CRC_JSON_UTIL_HPP
#define CRC_JSON_UTIL_HPP

#include <span>

#include <json.hpp>

#include <crc/linalg.hpp>

namespace crc
{

// Complex numbers are written as [re, im].
inline nlohmann::json cjson(Complex c)
{
    return nlohmann::json::array({static_cast<double>(c.real()), static_cast<double>(c.imag())});
}

inline nlohmann::json cvec(std::span<const Complex> v)
{
    nlohmann::json a = nlohmann::json::array();
    for (Complex c : v) {
        a.push_back(cjson(c));
    }
    return a;
}

inline nlohmann::json cmatrix(const CMatrix &m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(cjson(m(i, j)));
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace crc

#endif
