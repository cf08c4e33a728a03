// SPDX-License-Identifier: Apache-2.0
#include "cokernel_lab/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace cokernel_lab {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts))
{
    for (int p : parts_)
        if (p < 0)
            throw std::invalid_argument("partition parts must be nonnegative");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    while (!parts_.empty() && parts_.back() == 0)
        parts_.pop_back();
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::count_equal(int v) const
{
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), v));
}

Partition Partition::transpose() const
{
    std::vector<int> t(static_cast<std::size_t>(largest()), 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j)
            ++t[static_cast<std::size_t>(j)];
    return Partition(std::move(t));
}

bool Partition::contained_in(const Partition& other) const
{
    if (length() > other.length())
        return false;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        if (parts_[i] > other.parts_[i])
            return false;
    return true;
}

namespace {

void partitions_rec(int remaining, int max_part, int max_length, std::vector<int>& cur,
                    std::vector<Partition>& out)
{
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (max_length == 0)
        return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, max_length - 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Partition> partitions_of(int n, int max_part)
{
    std::vector<Partition> out;
    if (n < 0 || (n > 0 && max_part < 1))
        return out;
    std::vector<int> cur;
    partitions_rec(n, max_part, n, cur, out);
    return out;
}

std::vector<Partition> partitions_in_box(int max_length, int max_part)
{
    std::vector<Partition> out;
    std::vector<int> cur;
    for (int n = 0; n <= max_length * max_part; ++n)
        partitions_rec(n, max_part, max_length, cur, out);
    return out;
}

std::string to_string(const Partition& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.parts().size(); ++i) {
        if (i > 0)
            s += ',';
        s += std::to_string(p.parts()[i]);
    }
    return s + ")";
}

} // namespace cokernel_lab
