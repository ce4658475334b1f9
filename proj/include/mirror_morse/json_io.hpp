#pragma once

#include "mirror_morse/exact_weight.hpp"

#include <json.hpp>

#include <cstdlib>
#include <string>

namespace mirror_morse {

/// Precision used for "approx" renderings unless MIRROR_MORSE_PRECISION says otherwise.
inline constexpr unsigned kDefaultPrecisionBits = 64;

inline unsigned precision_from_env() {
    const char* v = std::getenv("MIRROR_MORSE_PRECISION");
    if (!v || !*v) return kDefaultPrecisionBits;
    char* end = nullptr;
    const long bits = std::strtol(v, &end, 10);
    if (*end != '\0' || bits < 24 || bits > 100000) return kDefaultPrecisionBits;
    return static_cast<unsigned>(bits);
}

/// {"factors": {"2": "-1/2", ...}, "approx": "<decimal>"}
inline nlohmann::json to_json(const PosExact& w, unsigned precision_bits) {
    nlohmann::json factors = nlohmann::json::object();
    for (const auto& [p, e] : w.factors()) factors[std::to_string(p)] = to_string(e);
    return {{"factors", factors}, {"approx", w.approx(precision_bits)}};
}

inline PosExact pos_exact_from_json(const nlohmann::json& j) {
    PosExact::FactorMap m;
    for (auto it = j.at("factors").begin(); it != j.at("factors").end(); ++it)
        m.emplace(std::stoull(it.key()), parse_rational(it.value().get<std::string>()));
    return PosExact::from_factors(m);
}

}  // namespace mirror_morse
