#include "volk/json_io.hpp"

namespace volk {

Json to_json(const PadicScalar& s) {
    Json j;
    j["prime"] = s.prime();
    if (s.is_zero()) {
        j["valuation"] = nullptr;
        j["digits"] = Json::array();
        if (s.exactly_zero())
            j["precision"] = nullptr;
        else
            j["precision"] = s.abs_precision();
        return j;
    }
    j["valuation"] = s.valuation();
    j["digits"] = base_p_digits(s.unit_part(), s.prime(), s.digits());
    j["precision"] = s.abs_precision();
    return j;
}

PadicScalar scalar_from_json(const Json& j, long wdigits) {
    long p = j.at("prime").get<long>();
    auto digits = j.at("digits").get<std::vector<long>>();
    if (digits.empty()) {
        if (j.at("precision").is_null()) return PadicScalar::zero(p);
        return PadicScalar::zero_at_precision(p, j.at("precision").get<long>());
    }
    long val = j.at("valuation").get<long>();
    long w = std::min<long>(static_cast<long>(digits.size()), wdigits);
    return PadicScalar::from_unit_part(p, from_base_p_digits(digits, p), val, w);
}

Json to_json(const CycloElement& x) {
    Json j;
    j["p"] = x.context()->prime();
    j["level"] = x.context()->level();
    Json coeffs = Json::array();
    for (long i = 0; i < x.context()->degree(); ++i) coeffs.push_back(to_json(x.coefficient(i)));
    j["coeffs"] = coeffs;
    return j;
}

CycloElement element_from_json(const Json& j, long wdigits) {
    long p = j.at("p").get<long>();
    long level = j.at("level").get<long>();
    auto ctx = field_context(p, level, wdigits);
    CycloElement acc = ctx->zero();
    const auto& coeffs = j.at("coeffs");
    for (long i = 0; i < static_cast<long>(coeffs.size()) && i < ctx->degree(); ++i) {
        PadicScalar c = scalar_from_json(coeffs[static_cast<size_t>(i)], wdigits);
        if (c.is_zero()) continue;
        CycloElement pi_pow = (i == 0) ? ctx->one() : (ctx->zeta_power(1) - ctx->one()).pow(i);
        acc = acc + pi_pow.scaled_by_scalar(c);
    }
    return acc;
}

Json to_json(const TabulatedDistribution& d) {
    Json j;
    j["p"] = d.prime();
    j["depth"] = d.depth();
    j["ambient_level"] = d.ambient()->level();
    Json levels = Json::array();
    for (long lev = 0; lev <= d.depth(); ++lev) {
        Json row = Json::array();
        for (long a = 0; a < static_cast<long>(d.values()[static_cast<size_t>(lev)].size()); ++a) {
            if (d.ambient()->level() == -1)
                row.push_back(to_json(d.value(lev, a).coefficient(0)));
            else
                row.push_back(to_json(d.value(lev, a)));
        }
        levels.push_back(row);
    }
    j["values"] = levels;
    return j;
}

TabulatedDistribution distribution_from_json(const Json& j, long wdigits) {
    long p = j.at("p").get<long>();
    long ambient_level = j.at("ambient_level").get<long>();
    auto ctx = field_context(p, ambient_level, wdigits);
    std::vector<std::vector<CycloElement>> vals;
    for (const auto& row : j.at("values")) {
        std::vector<CycloElement> out;
        for (const auto& cell : row) {
            if (ambient_level == -1)
                out.push_back(ctx->from_scalar(scalar_from_json(cell, wdigits)));
            else
                out.push_back(element_from_json(cell, wdigits));
        }
        vals.push_back(std::move(out));
    }
    return TabulatedDistribution(ctx, std::move(vals));
}

Json to_json(const GroupRingElement& g) {
    Json j;
    j["level"] = g.level();
    Json coeffs = Json::array();
    for (const auto& c : g.coeffs()) coeffs.push_back(to_json(c));
    j["coeffs"] = coeffs;
    Json duals = Json::array();
    if (g.level() <= g.ambient()->level() + 1)
        for (const auto& d : g.duals()) duals.push_back(to_json(d));
    j["duals"] = duals;
    return j;
}

Json to_json(const PadicSize& s, long p) {
    Json j;
    j["zero_at_precision"] = s.below_precision;
    if (s.below_precision) {
        if (s.zero_floor == std::numeric_limits<long>::max())
            j["certified_floor"] = nullptr;
        else
            j["certified_floor"] = s.zero_floor;
    } else {
        j["pi_valuation"] = s.pi_valuation;
    }
    j["ram_index"] = s.ram_index;
    j["prime"] = p;
    return j;
}

}  // namespace volk
