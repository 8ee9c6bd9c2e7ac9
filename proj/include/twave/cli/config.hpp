#pragma once

#include "twave/errors.hpp"
#include "twave/model.hpp"
#include "twave/ode.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace twave::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Malformed configuration: unknown key, wrong type, conflicting blocks.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Values given on the command line; each one overrides the config file.
struct Overrides {
    std::optional<double> beta, u0, k, alpha0, alphan, epsilon, ratio;
    std::optional<int> n;
    std::optional<int> grid_size;
    std::optional<double> grid_margin;
    std::optional<double> rel_tol, abs_tol;
    std::optional<std::vector<double>> seeds;  // flattened u, y pairs
    std::optional<double> eta_span;
    std::optional<std::string> out, csv, svg, output_dir;
};

struct RunConfig {
    SystemParams params;
    std::optional<PdeParams> pde;  // set when the parameters came from a "pde" block
    std::optional<double> ratio;
    int grid_size = 200;
    double grid_margin = 1e-6;
    ode::Tolerances tol{};
    std::vector<PhasePoint> seeds;
    double eta_span = 50.0;
    std::string out;         // report path; empty writes to stdout
    std::string csv;         // CSV path (abelian-scan)
    std::string svg;         // SVG path (phase-portrait); empty disables
    std::string output_dir = ".";
};

/// Config from a JSON document (may be empty) and flag overrides.
///
/// Keys: beta, u0, k, n, alpha0, alphan, epsilon, ratio, eta_span, seeds
/// ([[u, y], ...]), pde {a0, an, D, beta_tilde, c, epsilon},
/// grid {size, margin}, tolerances {rel, abs}, output {out, csv, svg, dir}.
/// A pde block replaces beta/alpha0/alphan/epsilon.  Throws ConfigError.
RunConfig resolve_config(const nlohmann::json& doc, const Overrides& flags);

/// Parses the file at `path`; throws ConfigError when unreadable or invalid JSON.
nlohmann::json load_config_file(const std::string& path);

/// Resolved configuration as a JSON object with stable key order.
nlohmann::ordered_json echo_inputs(const RunConfig& cfg);

} // namespace twave::cli
