#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "selforg/continuation.hpp"
#include "selforg/dynamics.hpp"
#include "selforg/model.hpp"

namespace selforg::cli {

/// Where the initial positions for relax/sweep come from.
struct InitialSpec
{
    enum class Kind { weak_lattice, state_file } kind = Kind::weak_lattice;
    std::filesystem::path path;
    double perturbation = 0.0;   ///< uniform random displacement amplitude, lambda0
};

struct SweepSpec
{
    double start = -40.0;
    double end = -0.2;
    int n_steps = 0;   ///< 0 selects the default coarse/fine grid
    double jump_threshold = 0.1;
};

struct ProbeSpec
{
    bool use_default = true;
    double lo = -60.0;
    double hi = 60.0;
    int points = 601;
    enum class Method { transfer, spinmodel } method = Method::transfer;

    std::vector<double> grid() const;
};

struct PhononSpec
{
    bool weak_limit = false;   ///< circulant weak-scattering stiffness instead of the full one
    bool damping = true;       ///< include the delay-induced damping matrix
};

struct FigdataSpec
{
    double negative_start = -40.0;
    double negative_end = -0.2;
    double positive_start = 40.0;
    double positive_end = 0.5;
    int fig1c_atoms = 10;
};

/// Everything a subcommand needs, validated before any computation.
struct RunConfig
{
    SystemParams params;
    RelaxOptions relax;
    double damping_factor = 1.0;   ///< gamma_e in units of sqrt(omega_r s0 N Gamma_1D) when ext_damping = 0
    InitialSpec initial;
    SweepSpec sweep;
    ProbeSpec probe;
    PhononSpec phonons;
    FigdataSpec figdata;
    std::filesystem::path state_file;

    std::uint64_t seed = 0;
    int threads = 1;
    std::filesystem::path out_dir = ".";
    std::uint64_t hash = 0;   ///< hash of the canonical config document and seed
};

/// Parses the run configuration document.  Relative paths are resolved
/// against `base_dir`.  Throws ConfigError on unknown keys or bad values.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir = ".");
RunConfig load_run_config(const std::filesystem::path& path);

/// Exit codes: 0 success, 1 usage/config, 2 convergence, 3 numerical.
int exit_code_for(const std::exception& e);

/// Subcommands.  Each writes its documented files into cfg.out_dir and
/// returns normally or throws a selforg::Error.
void cmd_relax(const RunConfig& cfg);
void cmd_sweep(const RunConfig& cfg);
void cmd_phonons(const RunConfig& cfg);
void cmd_spectrum(const RunConfig& cfg);
void cmd_figdata(const RunConfig& cfg);

/// Names of the CSV files written by cmd_figdata, in order.
const std::vector<std::string>& figdata_files();

/// Runs a subcommand by name and maps errors to exit codes, printing the
/// message to stderr.
int run_command(const std::string& name, const RunConfig& cfg);

} // namespace selforg::cli
