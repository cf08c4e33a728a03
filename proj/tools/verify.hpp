// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace cokernel_lab::cli {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool informational = false; ///< trend datapoint, never fails the suite
    json detail;
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    int workers = 1;
    /// Mutation hook for harness self-tests; "aut_order" perturbs the
    /// closed form before it meets the brute-force oracle.
    std::string tamper;
};

/// Suites: exact, montecarlo, curves-small. Throws ValidationError otherwise.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt);

} // namespace cokernel_lab::cli
