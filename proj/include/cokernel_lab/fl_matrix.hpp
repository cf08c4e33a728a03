// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cokernel_lab/field.hpp"

namespace cokernel_lab {

/// Small dense matrix over F_l, row-major. Used for explicit module tables.
struct FlMatrix {
    Residue l = 0;
    int rows = 0;
    int cols = 0;
    std::vector<Residue> data;

    FlMatrix() = default;
    FlMatrix(Residue field, int r, int c) : l(field), rows(r), cols(c), data(static_cast<std::size_t>(r * c), 0) {}

    Residue& at(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
    Residue at(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
};

FlMatrix operator*(const FlMatrix& a, const FlMatrix& b);
bool operator==(const FlMatrix& a, const FlMatrix& b);

/// Rank by Gaussian elimination on a copy.
int rank(FlMatrix m);

} // namespace cokernel_lab
