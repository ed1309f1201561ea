#pragma once

// Command-line front end: JSON run configuration with --set overrides, and
// the subcommands that write CSV/JSON results.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "socbloch/evolver.hpp"
#include "socbloch/model.hpp"

namespace socbloch::app {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

struct EvolveConfig {
    EvolveMode mode = EvolveMode::Rwa;
    std::optional<double> dt;  ///< mode default when absent
    double T = 10;
    int sample_stride = 100;
    bool stroboscopic = true;
    bool snapshots = false;
    std::string initial_profile;  ///< profile CSV; empty means start from psi_exact
};

struct SweepConfig {
    std::string param = "gamma";
    double start = 0;
    double stop = 1;
    int count = 101;
    std::vector<double> Gamma_values{0.1, 0.8, 1.4};
    std::vector<double> omegas{40, 80, 160};
    double T = 10;
};

struct RunConfig {
    PhysicalParams params;
    bool xi_given = false;
    std::optional<double> mu_override;
    int M = 2;
    int N = 256;
    std::optional<EvolveConfig> evolve;
    std::optional<SweepConfig> sweep;
    int random_sets = 100;
    std::uint64_t seed = 20240501;
    std::string output_dir = "out";
};

/// Applies `key=value` overrides. Keys are dotted JSON paths; a bare
/// parameter name (gamma, V0, ...) addresses params.<name>. Values are parsed
/// as JSON when possible, otherwise kept as strings.
nlohmann::json apply_overrides(nlohmann::json cfg, const std::vector<std::string>& sets);

/// Validates and resolves a configuration document. Missing parameters take
/// the defaults gamma=0.3, Gamma=0.1, g=0.6, g12=0.2, V0=1, Nt=5, omega=50;
/// a missing xi is set to omega sqrt(Gamma^2 + gamma^2). Throws Error(Config).
RunConfig parse_config(const nlohmann::json& doc);

/// Echo of the configuration actually used, including xi and the drive check.
nlohmann::json resolved_json(const RunConfig& cfg);

int cmd_exact(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);
int cmd_evolve(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);
int cmd_sweep_region(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);
int cmd_sweep_imbalance(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);
int cmd_sweep_current(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);
int cmd_sweep_rwa(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& err);

/// Full CLI entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace socbloch::app
