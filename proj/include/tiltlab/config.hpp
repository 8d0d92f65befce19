#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tiltlab/nsgeom.hpp"
#include "tiltlab/rational.hpp"

namespace tiltlab {

/// Error with a field-addressed diagnostic for bad config documents.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed surface description. Mirrors the file format one to one so that
/// parse -> serialize -> parse is the identity.
struct SurfaceConfig {
    std::string name;
    unsigned char_p = 2;
    Kodaira kodaira = Kodaira::MinusInfinity;
    bool quasi_elliptic = false;
    Int k2_min = 0;
    Int chi_o_min = 0;
    std::size_t rank = 1;
    std::vector<std::vector<Rational>> gram;
    RationalVector ample_h;
    RationalVector canonical;
    std::vector<RationalVector> bd_candidates;
    std::vector<RationalVector> effective_generators;
    bool minimal = true;
    std::optional<Int> hypersurface_degree;

    friend bool operator==(const SurfaceConfig&, const SurfaceConfig&) = default;
};

namespace detail {

using nlohmann::json;

inline void reject_floats(const json& j, const std::string& path) {
    if (j.is_number_float())
        throw ConfigError(path + ": decimal numbers are not accepted, encode rationals as \"p/q\"");
    if (j.is_object())
        for (auto it = j.begin(); it != j.end(); ++it) reject_floats(it.value(), path + "." + it.key());
    if (j.is_array())
        for (std::size_t i = 0; i < j.size(); ++i)
            reject_floats(j[i], path + "[" + std::to_string(i) + "]");
}

inline Rational rational_field(const json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Rational(Int(j.get<long long>()));
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    throw ConfigError(path + ": expected an integer or a \"p/q\" string");
}

inline Int int_field(const json& j, const std::string& path) {
    const Rational r = rational_field(j, path);
    if (!is_integer(r)) throw ConfigError(path + ": expected an integer");
    return numerator_of(r);
}

inline RationalVector vector_field(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path + ": expected an array");
    RationalVector v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_field(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

inline const json& required(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string(key) + ": required field is missing");
    return j.at(key);
}

inline nlohmann::ordered_json rational_to_json(const Rational& r) {
    if (is_integer(r)) {
        const Int n = numerator_of(r);
        if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
            return nlohmann::ordered_json(static_cast<long long>(n));
    }
    return nlohmann::ordered_json(to_fraction_string(r));
}

}  // namespace detail

inline SurfaceConfig parse_surface_config(const std::string& text) {
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    detail::reject_floats(j, "config");

    SurfaceConfig cfg;
    cfg.name = detail::required(j, "name").is_string()
                   ? j.at("name").get<std::string>()
                   : throw ConfigError("name: expected a string");
    {
        const Int p = detail::int_field(detail::required(j, "char_p"), "char_p");
        if (p < 2 || p > 1000000) throw ConfigError("char_p: out of range");
        cfg.char_p = static_cast<unsigned>(p);
    }
    {
        const json& k = detail::required(j, "kodaira");
        if (k.is_string() && k.get<std::string>() == "minus_infinity")
            cfg.kodaira = Kodaira::MinusInfinity;
        else if (k.is_number_integer() && k.get<int>() == 0)
            cfg.kodaira = Kodaira::Zero;
        else if (k.is_number_integer() && k.get<int>() == 1)
            cfg.kodaira = Kodaira::One;
        else if (k.is_number_integer() && k.get<int>() == 2)
            cfg.kodaira = Kodaira::Two;
        else
            throw ConfigError("kodaira: expected \"minus_infinity\", 0, 1 or 2");
    }
    if (j.contains("quasi_elliptic")) {
        if (!j.at("quasi_elliptic").is_boolean()) throw ConfigError("quasi_elliptic: expected a boolean");
        cfg.quasi_elliptic = j.at("quasi_elliptic").get<bool>();
    }
    cfg.k2_min = detail::int_field(detail::required(j, "K2_min"), "K2_min");
    cfg.chi_o_min = detail::int_field(detail::required(j, "chi_O_min"), "chi_O_min");

    const json& ns = detail::required(j, "ns");
    if (!ns.is_object()) throw ConfigError("ns: expected an object");
    {
        const Int r = detail::int_field(detail::required(ns, "rank"), "ns.rank");
        if (r < 1 || r > 64) throw ConfigError("ns.rank: out of range");
        cfg.rank = static_cast<std::size_t>(r);
    }
    {
        const json& g = detail::required(ns, "gram");
        if (!g.is_array() || g.size() != cfg.rank) throw ConfigError("ns.gram: expected rank many rows");
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto row = detail::vector_field(g[i], "ns.gram[" + std::to_string(i) + "]");
            if (row.size() != cfg.rank) throw ConfigError("ns.gram: rows must have rank many entries");
            cfg.gram.push_back(std::move(row));
        }
    }

    const auto vec = [&](const char* key) {
        auto v = detail::vector_field(detail::required(j, key), key);
        if (v.size() != cfg.rank) throw ConfigError(std::string(key) + ": expected rank many entries");
        return v;
    };
    cfg.ample_h = vec("ample_H");
    cfg.canonical = vec("canonical");

    const auto vec_list = [&](const char* key, std::vector<RationalVector>& out) {
        if (!j.contains(key)) return;
        const json& arr = j.at(key);
        if (!arr.is_array()) throw ConfigError(std::string(key) + ": expected an array of vectors");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            auto v = detail::vector_field(arr[i], std::string(key) + "[" + std::to_string(i) + "]");
            if (v.size() != cfg.rank)
                throw ConfigError(std::string(key) + "[" + std::to_string(i) +
                                  "]: expected rank many entries");
            out.push_back(std::move(v));
        }
    };
    vec_list("bd_candidates", cfg.bd_candidates);
    vec_list("effective_generators", cfg.effective_generators);

    if (j.contains("minimal")) {
        if (!j.at("minimal").is_boolean()) throw ConfigError("minimal: expected a boolean");
        cfg.minimal = j.at("minimal").get<bool>();
    }
    if (j.contains("hypersurface_degree"))
        cfg.hypersurface_degree = detail::int_field(j.at("hypersurface_degree"), "hypersurface_degree");

    return cfg;
}

/// Canonical serialization: fixed key order, integers as JSON integers,
/// non-integers as "p/q" strings, two-space indentation, trailing newline.
inline std::string serialize_surface_config(const SurfaceConfig& cfg) {
    using detail::json;
    nlohmann::ordered_json j;
    j["name"] = cfg.name;
    j["char_p"] = cfg.char_p;
    if (cfg.kodaira == Kodaira::MinusInfinity)
        j["kodaira"] = "minus_infinity";
    else
        j["kodaira"] = cfg.kodaira == Kodaira::Zero ? 0 : (cfg.kodaira == Kodaira::One ? 1 : 2);
    j["quasi_elliptic"] = cfg.quasi_elliptic;
    j["K2_min"] = detail::rational_to_json(Rational(cfg.k2_min));
    j["chi_O_min"] = detail::rational_to_json(Rational(cfg.chi_o_min));
    j["ns"]["rank"] = cfg.rank;
    {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : cfg.gram) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const auto& x : row) r.push_back(detail::rational_to_json(x));
            rows.push_back(std::move(r));
        }
        j["ns"]["gram"] = std::move(rows);
    }
    const auto vec_to_json = [](const RationalVector& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& x : v) arr.push_back(detail::rational_to_json(x));
        return arr;
    };
    j["ample_H"] = vec_to_json(cfg.ample_h);
    j["canonical"] = vec_to_json(cfg.canonical);
    if (!cfg.bd_candidates.empty()) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& v : cfg.bd_candidates) arr.push_back(vec_to_json(v));
        j["bd_candidates"] = std::move(arr);
    }
    if (!cfg.effective_generators.empty()) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& v : cfg.effective_generators) arr.push_back(vec_to_json(v));
        j["effective_generators"] = std::move(arr);
    }
    j["minimal"] = cfg.minimal;
    if (cfg.hypersurface_degree)
        j["hypersurface_degree"] = detail::rational_to_json(Rational(*cfg.hypersurface_degree));
    return j.dump(2) + "\n";
}

/// Builds the validated surface model described by the config. Validation
/// failures surface as ConfigError with the offending field named.
inline SurfaceModel to_surface_model(const SurfaceConfig& cfg) {
    try {
        auto lattice = make_lattice(cfg.gram);
        DivisorClass canonical(lattice, cfg.canonical);
        DivisorClass ample(lattice, cfg.ample_h);
        std::vector<DivisorClass> candidates;
        for (const auto& v : cfg.bd_candidates) candidates.emplace_back(lattice, v);
        std::vector<DivisorClass> gens;
        for (const auto& v : cfg.effective_generators) gens.emplace_back(lattice, v);
        return SurfaceModel(cfg.name, cfg.char_p, cfg.kodaira, cfg.quasi_elliptic, cfg.k2_min,
                            cfg.chi_o_min, std::move(canonical), std::move(ample),
                            std::move(candidates), std::move(gens), cfg.minimal);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid surface description: ") + e.what());
    }
}

inline SurfaceConfig config_from_model(const SurfaceModel& s,
                                       std::optional<Int> hypersurface_degree = std::nullopt) {
    SurfaceConfig cfg;
    cfg.name = s.name();
    cfg.char_p = s.char_p();
    cfg.kodaira = s.kodaira();
    cfg.quasi_elliptic = s.quasi_elliptic();
    cfg.k2_min = s.k2_min();
    cfg.chi_o_min = s.chi_o_min();
    cfg.rank = s.lattice()->rank();
    for (std::size_t i = 0; i < cfg.rank; ++i) {
        std::vector<Rational> row;
        for (std::size_t j = 0; j < cfg.rank; ++j) row.push_back(s.lattice()->gram().at(i, j));
        cfg.gram.push_back(std::move(row));
    }
    cfg.ample_h = s.ample().coords();
    cfg.canonical = s.canonical().coords();
    for (const auto& d : s.bd_candidates()) cfg.bd_candidates.push_back(d.coords());
    for (const auto& d : s.effective_generators()) cfg.effective_generators.push_back(d.coords());
    cfg.minimal = s.minimal();
    cfg.hypersurface_degree = hypersurface_degree;
    return cfg;
}

}  // namespace tiltlab
