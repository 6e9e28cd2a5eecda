#pragma once

// JSON encoding for exact polynomials: {"coeffs": ["<decimal>", ...]}, index = power.
// Coefficients are strings so consumers never truncate to a machine integer.

#include <string>
#include <vector>

#include "json.hpp"

#include "elliptic/exactpoly.hpp"

namespace elliptic {

inline void to_json(nlohmann::json& j, const IntPolynomial& p) {
    auto arr = nlohmann::json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.str());
    j = nlohmann::json{{"coeffs", std::move(arr)}};
}

inline void from_json(const nlohmann::json& j, IntPolynomial& p) {
    std::vector<BigInt> cs;
    for (const auto& c : j.at("coeffs")) cs.emplace_back(c.get<std::string>());
    p = IntPolynomial(std::move(cs));
}

}  // namespace elliptic
