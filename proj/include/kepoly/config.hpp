#ifndef KEPOLY_CONFIG_HPP
#define KEPOLY_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kepoly/analytic.hpp"
#include "kepoly/geometry.hpp"
#include "kepoly/roots.hpp"

namespace kepoly::cli {

/// Input rejection with the offending config field spelled out; the CLI turns
/// these into exit code 2.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string f, const std::string& msg)
        : std::runtime_error("config error at '" + f + "': " + msg), field(std::move(f)) {}
};

enum class CoordinateMode { SimpleRoots, Realization };
enum class PolytopeSource { PplusVertices, PVertices, Wonderful };

struct Config {
    roots::GroupSpec group;
    PolytopeSource source = PolytopeSource::Wonderful;
    std::vector<std::vector<std::string>> vertex_strings;  // raw, for the echo
    CoordinateMode coords = CoordinateMode::SimpleRoots;
    analytic::QuadratureSpec quad;
    nlohmann::ordered_json echo;  // normalized input; re-parseable as a config
};

Config parse_config(const nlohmann::json& j);
Config parse_config_file(const std::string& path);
Config config_for_builtin(const std::string& name);

struct Realization {
    roots::RootSystem rs;
    geom::RationalPolytope pplus;
    std::optional<geom::RationalPolytope> p_full;  // the W-invariant P, when requested
};

/// Build the root system and polytopes described by a config. With
/// `need_full_polytope` the W-invariant P is reconstructed (and its chamber
/// part cross-checked against P+).
Realization realize(const Config& cfg, bool need_full_polytope);

}  // namespace kepoly::cli

#endif
