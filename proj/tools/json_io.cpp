// SPDX-License-Identifier: Apache-2.0
#include "json_io.hpp"

#include <sstream>

namespace cokernel_lab::cli {

std::string rational_string(const mpq_class& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

json to_json(const Poly& p)
{
    return {{"l", p.modulus()}, {"coeffs", p.coeffs()}, {"text", to_string(p)}};
}

json to_json(const RingSpec& r)
{
    json factors = json::array();
    for (const auto& f : r.factors())
        factors.push_back({{"p", to_json(f.prime())}, {"e", f.exponent()}, {"residue_size", f.residue_size()}});
    return {{"l", r.characteristic()}, {"factors", factors}};
}

json to_json(const TypeKey& t)
{
    json out = json::array();
    for (const auto& p : t)
        out.push_back(p.parts());
    return out;
}

json to_json(const MeasureValue& v)
{
    return {{"rational", rational_string(v.rational)},
            {"eta_factors", v.eta_factors},
            {"value", v.value()},
            {"hypothesis_eta_gt_half", eta_product_gt_half(v.eta_factors)}};
}

Poly parse_poly_arg(const std::string& text, Residue l, std::optional<Residue> a)
{
    try {
        if (!text.empty() && (text.front() == '[' || text.front() == '{')) {
            const json j = json::parse(text);
            if (j.is_array())
                return Poly(l, j.get<std::vector<Residue>>());
            if (j.at("l").get<Residue>() != l)
                throw ValidationError("polynomial field does not match l");
            return Poly(l, j.at("coeffs").get<std::vector<Residue>>());
        }
        return parse_poly(text, l, a);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad polynomial JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

RingSpec parse_ring(const std::string& text, std::optional<Residue> l, std::optional<Residue> a)
{
    std::vector<LocalRingSpec> factors;
    try {
        if (!text.empty() && text.front() == '{') {
            const json j = json::parse(text);
            const auto field = j.at("l").get<Residue>();
            if (l && *l != field)
                throw ValidationError("--l disagrees with the ring JSON");
            for (const auto& f : j.at("factors")) {
                const json& p = f.at("p");
                const Poly poly = p.is_string() ? parse_poly_arg(p.get<std::string>(), field, a)
                                                : parse_poly_arg(p.dump(), field, a);
                factors.emplace_back(poly, f.at("e").get<int>());
            }
        } else {
            if (!l)
                throw ValidationError("ring text form needs --l");
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ';')) {
                const auto colon = item.rfind(':');
                if (colon == std::string::npos)
                    throw ValidationError("ring factor must look like P:e, got '" + item + "'");
                factors.emplace_back(parse_poly_arg(item.substr(0, colon), *l, a), std::stoi(item.substr(colon + 1)));
            }
        }
        return RingSpec(std::move(factors));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad ring JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    } catch (const std::out_of_range& e) {
        throw ValidationError(e.what());
    }
}

TypeKey parse_type(const std::string& text, const RingSpec& ring)
{
    try {
        const json j = json::parse(text);
        TypeKey key;
        for (const auto& p : j)
            key.emplace_back(p.get<std::vector<int>>());
        if (key.size() != ring.factor_count())
            throw ValidationError("module type needs one partition per ring factor");
        ModuleType(ring, key);
        return key;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad module type JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

DivisorCondition parse_condition(const std::string& text, Residue l, std::optional<Residue> a)
{
    const auto colon = text.rfind(':');
    if (colon == std::string::npos)
        throw ValidationError("condition must look like P:m, got '" + text + "'");
    try {
        return {parse_poly_arg(text.substr(0, colon), l, a), std::stoi(text.substr(colon + 1))};
    } catch (const std::invalid_argument&) {
        throw ValidationError("bad multiplicity in condition '" + text + "'");
    }
}

} // namespace cokernel_lab::cli
