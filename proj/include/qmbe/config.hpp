// Config loading: TOML (subset) or JSON, strict about unknown keys.
// --set key=value overrides are applied to the parsed tree before typing.
#ifndef QMBE_CONFIG_HPP
#define QMBE_CONFIG_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "qmbe/params.hpp"

namespace qmbe {

using json = nlohmann::json;

// Supported TOML subset: [section] headers, key = value with dotted keys,
// strings, booleans, integers, floats, flat arrays, # comments.
json parse_toml(const std::string& text);

// Dispatches on extension (.toml / .json); applies "path.key=value"
// overrides afterwards.
json load_config_file(const std::string& path,
                      const std::vector<std::string>& overrides = {});

struct BetaScanConfig {
    std::vector<double> omega_list;  // default {0, 0.5, 1} * (Gamma + kappa)
    double Omega_f_min = 0.0;
    double Omega_f_max = -1.0;       // default 5 * (Gamma + kappa)
    int n_points = 200;
};

struct FarfieldConfig {
    std::vector<double> fractions;   // of the pinning density; default Fig.-2 nine
    double theta_min_deg = -30.0;
    double theta_max_deg = 30.0;
    int n_theta = 241;
    std::string backend = "auto";    // auto | closed_form_t0 | adaptive | lattice
};

struct EvolveConfig {
    double N0 = 0.0;                 // uniform initial carrier density
};

struct ResolvedConfig {
    DeviceParams device;
    NumericsConfig numerics;
    BetaScanConfig beta_scan;
    FarfieldConfig farfield;
    EvolveConfig evolve;
    json tree;  // resolved tree (defaults folded in), written to sidecars
};

// Validates types and key names; unknown keys are a hard error.
ResolvedConfig resolve_config(const json& root);

// FNV-1a over the canonical serialization; stamped into output sidecars.
std::uint64_t config_fingerprint(const json& tree);

} // namespace qmbe

#endif
