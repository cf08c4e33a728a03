// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace cokernel_lab {

/// Weakly decreasing tuple of positive integers; the empty partition is the
/// zero module.
class Partition {
public:
    Partition() = default;
    /// Sorts into decreasing order and drops zero parts; throws on negatives.
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    /// |lambda|
    int size() const;
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    int count_equal(int v) const;
    /// i-th part, 0-based; zero past the end.
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

    Partition transpose() const;
    /// mu <= lambda componentwise.
    bool contained_in(const Partition& other) const;

    friend auto operator<=>(const Partition&, const Partition&) = default;
    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

/// Partitions of n with every part <= max_part, in reverse lexicographic order.
std::vector<Partition> partitions_of(int n, int max_part);

/// Partitions with at most max_length parts, each <= max_part.
std::vector<Partition> partitions_in_box(int max_length, int max_part);

/// "(2,1)"; the empty partition prints as "()".
std::string to_string(const Partition& p);

} // namespace cokernel_lab
