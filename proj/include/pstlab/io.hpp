// Copyright 2026 The pstlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <string>
#include <system_error>

#include <nlohmann/json.hpp>

#include "pstlab/errors.hpp"
#include "pstlab/liouville.hpp"
#include "pstlab/magnus.hpp"
#include "pstlab/pauli.hpp"

namespace pstlab {

using ordered_json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) {
        throw NumericalError("format_double: conversion failed");
    }
    return std::string(buf, end);
}

/// Nested rows of [re, im] pairs.
inline ordered_json matrix_to_json(const ComplexMatrix &m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(ordered_json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const ordered_json &j) {
    if (!j.is_array()) throw InputError("matrix JSON must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw InputError("matrix JSON rows must have equal length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto &entry = row[static_cast<std::size_t>(k)];
            if (!entry.is_array() || entry.size() != 2) {
                throw InputError("matrix JSON entries must be [re, im] pairs");
            }
            m(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

/// {"LABEL": amplitude, ...} in term order.
inline ordered_json terms_to_json(const std::vector<PauliTerm> &terms) {
    ordered_json j = ordered_json::object();
    for (const auto &t : terms) j[t.pauli.label()] = t.coefficient;
    return j;
}

inline std::vector<PauliTerm> terms_from_json(const ordered_json &j, const char *what) {
    if (!j.is_object()) {
        throw InputError(std::string(what) + " must be an object mapping Pauli labels to numbers");
    }
    std::vector<PauliTerm> terms;
    for (const auto &[label, value] : j.items()) {
        if (!value.is_number()) {
            throw InputError(std::string(what) + ": value for " + label + " is not a number");
        }
        terms.push_back(PauliTerm{PauliString::from_label(label), value.get<double>()});
    }
    return terms;
}

}  // namespace pstlab
