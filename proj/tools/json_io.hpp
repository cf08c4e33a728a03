// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cokernel_lab/curves.hpp"
#include "cokernel_lab/measure.hpp"
#include "cokernel_lab/montecarlo.hpp"

namespace cokernel_lab::cli {

using nlohmann::json;

/// Input that fails validation; maps to exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json to_json(const Poly& p);
json to_json(const RingSpec& r);
json to_json(const TypeKey& t);
json to_json(const MeasureValue& v);
std::string rational_string(const mpq_class& q);

/// "X^2+2" style text, or a JSON coefficient list / {"l":..,"coeffs":..}.
Poly parse_poly_arg(const std::string& text, Residue l, std::optional<Residue> a);

/// Either JSON {"l":3,"factors":[{"p":"X","e":2}, ...]} or "P:e;P:e" with l.
RingSpec parse_ring(const std::string& text, std::optional<Residue> l, std::optional<Residue> a);

/// JSON array of partitions, one per factor: [[2,1],[1]].
TypeKey parse_type(const std::string& text, const RingSpec& ring);

/// "P:m" with P in human form.
DivisorCondition parse_condition(const std::string& text, Residue l, std::optional<Residue> a);

} // namespace cokernel_lab::cli
