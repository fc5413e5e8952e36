#pragma once

// JSON configuration: {"n": 3, "alpha": ["0", ...], "beta": [...], "gamma": [...]}
// with rationals as "p/q" or integer strings.

#include "qdu/params.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace qdu {

inline Scalar parse_json_scalar(const nlohmann::json& v, const std::string& field) {
    try {
        if (v.is_string()) return parse_scalar(v.get<std::string>());
        if (v.is_number_integer()) return Scalar(v.dump());
    } catch (const InputError& e) {
        throw InputError("field " + field + ": " + e.what());
    }
    throw InputError("field " + field + ": expected a rational string, got " + v.dump());
}

inline Parameters parse_config(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("config must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw InputError("field n: missing or not an integer");
    const long long n = j["n"].get<long long>();
    if (n < 1) throw InputError("field n: must be positive, got " + std::to_string(n));
    if (n > 4096) throw InputError("field n: too large");
    Parameters p(static_cast<int>(n));
    for (const char* key : {"alpha", "beta", "gamma"}) {
        std::vector<Scalar>& dst = key[0] == 'a' ? p.alpha : key[0] == 'b' ? p.beta : p.gamma;
        if (!j.contains(key)) throw InputError(std::string("field ") + key + ": missing");
        const auto& arr = j[key];
        if (!arr.is_array()) throw InputError(std::string("field ") + key + ": expected an array");
        if (static_cast<long long>(arr.size()) != n)
            throw InputError(std::string("field ") + key + ": length mismatch (" + std::to_string(arr.size()) +
                             " entries, n = " + std::to_string(n) + ")");
        for (std::size_t i = 0; i < arr.size(); ++i)
            dst[i] = parse_json_scalar(arr[i], std::string(key) + "[" + std::to_string(i) + "]");
    }
    for (const auto& [key, _] : j.items())
        if (key != "n" && key != "alpha" && key != "beta" && key != "gamma")
            throw InputError("field " + key + ": unknown");
    return p;
}

inline nlohmann::ordered_json scalars_json(const std::vector<Scalar>& v) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& s : v) a.push_back(to_string(s));
    return a;
}

inline nlohmann::ordered_json config_json(const Parameters& p) {
    nlohmann::ordered_json j;
    j["n"] = p.n;
    j["alpha"] = scalars_json(p.alpha);
    j["beta"] = scalars_json(p.beta);
    j["gamma"] = scalars_json(p.gamma);
    return j;
}

/// Canonical text form; parse_config(print_config(p)) == p.
inline std::string print_config(const Parameters& p) { return config_json(p).dump(); }

}  // namespace qdu
