// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>

#include "cokernel_lab/montecarlo.hpp"

using namespace cokernel_lab;

namespace {

const RingSpec kF3 = RingSpec::local(Poly::x(3), 1);
const RingSpec kDual = RingSpec::local(Poly::x(3), 2);

SampleConfig exhaustive(const RingSpec& r, int n)
{
    SampleConfig c{r, n};
    c.mode = SampleMode::Exhaustive;
    return c;
}

/// Typical TV of an N-sample from mu: 1/2 sum sqrt(p(1-p)/N).
double sampling_noise(const RingSpec& r, std::uint64_t trials)
{
    double s = 0;
    for (const auto& [key, p] : theory_truncation(r, 1e-7))
        s += std::sqrt(p * (1 - p) / static_cast<double>(trials));
    return s / 2;
}

/// Every module type over `r` with at most `max_size` elements.
std::vector<ModuleType> small_modules(const RingSpec& r, std::uint64_t max_size)
{
    std::vector<ModuleType> out;
    for (int d = 0;; ++d) {
        if (std::pow(static_cast<double>(r.characteristic()), d) > static_cast<double>(max_size))
            break;
        for (auto& t : enumerate_module_types(r, d))
            out.push_back(std::move(t));
    }
    return out;
}

} // namespace

TEST_CASE("exhaustive cokernel census examples")
{
    const auto f3 = sample_cokernels(exhaustive(kF3, 1));
    CHECK(f3.total == 3);
    CHECK(f3.counts == std::map<TypeKey, std::uint64_t>{{{Partition{}}, 2}, {{Partition{1}}, 1}});

    const auto dual = sample_cokernels(exhaustive(kDual, 1));
    CHECK(dual.total == 9);
    CHECK(dual.counts ==
          std::map<TypeKey, std::uint64_t>{{{Partition{}}, 6}, {{Partition{1}}, 2}, {{Partition{2}}, 1}});

    auto big = exhaustive(kDual, 3);
    CHECK_THROWS_AS(sample_cokernels(big), std::length_error);
    CHECK(exhaustive_size(kDual, 3) == std::uint64_t{387420489});
}

TEST_CASE("empirical moment examples")
{
    const ModuleType f3(kF3, {Partition{1}});
    CHECK(*empirical_moment(exhaustive(kF3, 1), f3).exact == mpq_class(2, 3));
    CHECK(*empirical_moment(exhaustive(kF3, 2), f3).exact == mpq_class(8, 9));
    CHECK(*empirical_moment(exhaustive(kDual, 2), ModuleType::trivial(kDual)).exact == 1);
    CHECK(moment_closed_form(kF3, 2, f3) == mpq_class(8, 9));
}

TEST_CASE("exhaustive moments equal the closed form")
{
    const std::vector<std::pair<RingSpec, int>> cases = {
        {kF3, 1},
        {kF3, 2},
        {kF3, 3},
        {RingSpec::local(Poly::x(5), 1), 2},
        {kDual, 1},
        {kDual, 2},
        {RingSpec::local(Poly::x(3), 3), 1},
        {RingSpec::local(parse_poly("X^2+1", 3), 1), 2},
        {RingSpec({LocalRingSpec(parse_poly("X-1", 3), 1), LocalRingSpec(parse_poly("X+1", 3), 1)}), 2},
    };
    for (const auto& [ring, n] : cases) {
        const auto emp = sample_cokernels(exhaustive(ring, n));
        for (const auto& a : small_modules(ring, 81)) {
            CAPTURE(to_string(a.local_types));
            CHECK(*empirical_moment(emp, ring, a, true).exact == moment_closed_form(ring, n, a));
        }
    }
}

TEST_CASE("seeded sampling is reproducible and worker independent")
{
    SampleConfig c{kDual, 4, 3000, 42};
    const auto serial = sample_cokernels(c, Execution::Serial);
    const auto parallel = sample_cokernels(c, Execution::Parallel);
    c.workers = 3;
    const auto three = sample_cokernels(c, Execution::Parallel);
    CHECK(serial.counts == parallel.counts);
    CHECK(serial.counts == three.counts);
    c.seed = 43;
    CHECK(sample_cokernels(c).counts != serial.counts);
    std::uint64_t sum = 0;
    for (const auto& [k, v] : serial.counts)
        sum += v;
    CHECK(sum == serial.total);
}

TEST_CASE("TV distance basics")
{
    const std::map<TypeKey, double> a{{{Partition{}}, 0.5}, {{Partition{1}}, 0.5}};
    const std::map<TypeKey, double> b{{{Partition{2}}, 1.0}};
    CHECK(tv_distance(a, a) == 0);
    CHECK(tv_distance(a, b) == doctest::Approx(1.0));

    const auto boot = sample_from_theory(kDual, 100000, 5);
    const auto report = tv_distance(boot, kDual);
    CHECK(report.tv < 0.01);
    CHECK(report.deficit < 1e-4);

    const auto trunc = theory_truncation(kDual);
    double mass = 0;
    for (const auto& [k, m] : trunc) {
        CHECK(m >= 1e-7);
        mass += m;
    }
    CHECK(mass > 1 - 1e-4);
}

TEST_CASE("TV to the measure does not grow with n beyond noise")
{
    const std::uint64_t trials = 4000;
    const double noise = sampling_noise(kDual, trials);
    double prev = 1;
    for (int n : {2, 4, 6}) {
        const auto emp = sample_cokernels(SampleConfig{kDual, n, trials, 11});
        const double tv = tv_distance(emp, kDual).tv;
        CHECK(tv <= prev + 2 * noise);
        prev = tv;
    }
}

TEST_CASE("joint cokernel distribution factors over a product ring")
{
    const RingSpec r({LocalRingSpec(parse_poly("X-1", 3), 2), LocalRingSpec(parse_poly("X+1", 3), 1)});
    const std::uint64_t trials = 4000;
    const auto emp = sample_cokernels(SampleConfig{r, 4, trials, 3});
    CHECK(factorization_gap(emp) < 3 * sampling_noise(r, trials));
}

TEST_CASE("prelimit constants converge")
{
    const auto rows0 = finite_n_constant_demo(3, 0, 1, 12);
    CHECK(rows0.front().prelimit == mpq_class(2, 3));
    for (std::size_t i = 1; i < rows0.size(); ++i)
        CHECK(rows0[i].value < rows0[i - 1].value);
    for (int j : {0, 1, 2}) {
        const auto rows = finite_n_constant_demo(3, j, 12, 12);
        CHECK(std::abs(rows.back().value - c_constant_local(3, j).value()) < 1e-4);
    }
    CHECK(finite_n_constant_demo(3, 2, 0, 3).front().n == 2);
}
