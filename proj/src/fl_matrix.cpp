// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/fl_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace cokernel_lab {

FlMatrix operator*(const FlMatrix& a, const FlMatrix& b)
{
    if (a.cols != b.rows || a.l != b.l)
        throw std::invalid_argument("F_l matrix shapes do not compose");
    FlMatrix c(a.l, a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const std::uint64_t x = a.at(i, k);
            if (x == 0)
                continue;
            for (int j = 0; j < b.cols; ++j)
                c.at(i, j) = static_cast<Residue>((c.at(i, j) + x * b.at(k, j)) % a.l);
        }
    return c;
}

bool operator==(const FlMatrix& a, const FlMatrix& b)
{
    return a.l == b.l && a.rows == b.rows && a.cols == b.cols && a.data == b.data;
}

int rank(FlMatrix m)
{
    const PrimeField f(m.l);
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        for (int j = 0; j < m.cols; ++j)
            std::swap(m.at(r, j), m.at(piv, j));
        const Residue inv = f.inv(m.at(r, c));
        for (int j = c; j < m.cols; ++j)
            m.at(r, j) = f.mul(m.at(r, j), inv);
        for (int i = r + 1; i < m.rows; ++i) {
            const Residue factor = m.at(i, c);
            if (factor == 0)
                continue;
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
        }
        ++r;
    }
    return r;
}

} // namespace cokernel_lab
