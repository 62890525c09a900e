#include "selforg/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "selforg/analytics.hpp"
#include "selforg/coherence.hpp"
#include "selforg/errors.hpp"
#include "selforg/io.hpp"
#include "selforg/optics.hpp"
#include "selforg/parallel.hpp"
#include "selforg/phonons.hpp"

namespace selforg::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> known)
{
    if (!obj.is_object())
        throw ConfigError(where + ": expected a JSON object");
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            ok = ok || item.key() == k;
        if (!ok)
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
}

double get_number(const json& obj, const char* key, double fallback, const std::string& where)
{
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_number())
        throw ConfigError(where + "." + key + " must be a number");
    return obj.at(key).get<double>();
}

std::int64_t get_integer(const json& obj, const char* key, std::int64_t fallback,
                         const std::string& where)
{
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_number_integer())
        throw ConfigError(where + "." + key + " must be an integer");
    return obj.at(key).get<std::int64_t>();
}

bool get_bool(const json& obj, const char* key, bool fallback, const std::string& where)
{
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_boolean())
        throw ConfigError(where + "." + key + " must be true or false");
    return obj.at(key).get<bool>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& where)
{
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_string())
        throw ConfigError(where + "." + key + " must be a string");
    return obj.at(key).get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& p)
{
    fs::path path(p);
    return path.is_relative() ? base / path : path;
}

std::string hex64(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// --- run plumbing -------------------------------------------------------

std::ofstream open_output(const RunConfig& cfg, const std::string& name)
{
    fs::create_directories(cfg.out_dir);
    const fs::path path = cfg.out_dir / name;
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write " + path.string());
    return out;
}

void write_csv_file(const RunConfig& cfg, const std::string& name, const std::string& command,
                    const std::string& body)
{
    std::ofstream out = open_output(cfg, name);
    write_provenance(out, cfg.hash, "command=" + command);
    out << body;
}

void write_json_file(const RunConfig& cfg, const std::string& name, json doc)
{
    doc["version"] = version_string;
    doc["config_hash"] = hex64(cfg.hash);
    std::ofstream out = open_output(cfg, name);
    out << doc.dump(2) << '\n';
}

double effective_damping(const RunConfig& cfg, const SystemParams& params)
{
    return params.ext_damping > 0.0 ? params.ext_damping
                                    : cfg.damping_factor * phonon_frequency_scale(params);
}

RealVector perturbed(RealVector z, double amplitude, std::uint64_t seed)
{
    if (amplitude > 0.0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> jitter(-1.0, 1.0);
        for (Eigen::Index j = 0; j < z.size(); ++j)
            z[j] += amplitude * jitter(rng);
    }
    return z;
}

// Starting configuration for relax/sweep: full state when read from a file.
ChainState initial_state(const RunConfig& cfg)
{
    if (cfg.initial.kind == InitialSpec::Kind::state_file) {
        ChainState s = load_state_csv(cfg.initial.path);
        if (s.size() != cfg.params.n_atoms)
            throw ConfigError("initial state has " + std::to_string(s.size()) +
                              " atoms but params.n_atoms = " + std::to_string(cfg.params.n_atoms));
        if (cfg.initial.perturbation > 0.0) {
            s.z = perturbed(s.z, cfg.initial.perturbation, cfg.seed);
            require_strictly_increasing(s.z);
            s.sigma = solve_instantaneous(cfg.params, s.z);
        }
        return s;
    }
    RealVector z = perturbed(weak_lattice(cfg.params.n_atoms).z, cfg.initial.perturbation, cfg.seed);
    return state_at_rest(cfg.params, z);
}

// Fixed configuration probed by phonons/spectrum.
RealVector probe_configuration(const RunConfig& cfg)
{
    if (!cfg.state_file.empty()) {
        ChainState s = load_state_csv(cfg.state_file);
        if (s.size() != cfg.params.n_atoms)
            throw ConfigError("state file has " + std::to_string(s.size()) +
                              " atoms but params.n_atoms = " + std::to_string(cfg.params.n_atoms));
        return s.z;
    }
    if (cfg.initial.kind == InitialSpec::Kind::state_file)
        return load_state_csv(cfg.initial.path).z;
    RealVector z = perturbed(weak_lattice(cfg.params.n_atoms).z, cfg.initial.perturbation, cfg.seed);
    require_strictly_increasing(z);
    return z;
}

std::string state_csv(const ChainState& s)
{
    std::ostringstream os;
    write_state_csv(os, s);
    return os.str();
}

json metrics_json(const ConvergenceMetrics& m)
{
    return {{"max_momentum", m.max_momentum},
            {"max_force", m.max_force},
            {"com_momentum", m.com_momentum},
            {"com_force", m.com_force}};
}

SweepOptions sweep_options(const RunConfig& cfg)
{
    SweepOptions o;
    o.relax = cfg.relax;
    o.damping_factor = cfg.damping_factor;
    o.jump_threshold = cfg.sweep.jump_threshold;
    o.seed = cfg.seed;
    return o;
}

std::vector<double> sweep_grid(double start, double end, int n_steps)
{
    return n_steps > 0 ? linear_sweep_grid(start, end, n_steps) : default_sweep_grid(start, end);
}

SweepResult run_sweep(const RunConfig& cfg, double start, double end, int n_steps,
                      const RealVector& seed)
{
    SweepOptions o = sweep_options(cfg);
    o.on_record = [](const SweepRecord& r) {
        std::fprintf(stderr, "  delta = %+8.3f  d_central = %.6f  segments = %d  steps = %lld\n",
                     r.pump_detuning, r.d_central, r.phase_slip.n_segments(),
                     static_cast<long long>(r.relax_steps));
    };
    return adiabatic_sweep(cfg.params, sweep_grid(start, end, n_steps), o, seed);
}

json sweep_log(const SweepResult& res)
{
    json steps = json::array();
    for (const SweepRecord& r : res.records) {
        steps.push_back({{"pump_detuning", r.pump_detuning},
                         {"ext_damping", r.ext_damping},
                         {"relax_time", r.relax_time},
                         {"relax_steps", r.relax_steps},
                         {"metrics", metrics_json(r.metrics)}});
    }
    return {{"direction", res.direction},
            {"seed", res.seed_description},
            {"params", json::parse(params_to_json_text(res.params))},
            {"records", steps}};
}

PhononModes modes_at(const RunConfig& cfg, const SystemParams& params, const RealVector& z)
{
    if (cfg.phonons.weak_limit) {
        const RealMatrix k = weak_limit_stiffness(params, z);
        return normal_modes(k, RealMatrix::Zero(k.rows(), k.cols()), params);
    }
    if (!cfg.phonons.damping) {
        const RealMatrix k = stiffness_matrix(params, z);
        return normal_modes(k, RealMatrix::Zero(k.rows(), k.cols()), params);
    }
    const Linearization lin = linearize(params, z);
    return normal_modes(lin.stiffness, lin.damping, params);
}

OpticalSpectrum spectrum_at(const RunConfig& cfg, const SystemParams& params, const RealVector& z,
                            const std::vector<double>& grid, int threads)
{
    return cfg.probe.method == ProbeSpec::Method::transfer
               ? chain_spectrum_transfer(params, z, grid, threads)
               : chain_spectrum_spinmodel(params, z, grid, threads);
}

std::string fmt(double x)
{
    return format_double(x);
}

} // namespace

std::vector<double> ProbeSpec::grid() const
{
    return use_default ? default_probe_grid() : uniform_grid(lo, hi, points);
}

RunConfig parse_run_config(const std::string& text, const fs::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    check_keys(doc, "config",
               {"params", "damping_factor", "relax", "initial", "sweep", "probe", "phonons",
                "figdata", "state_file", "seed"});

    RunConfig cfg;
    if (doc.contains("params"))
        cfg.params = params_from_json_text(doc.at("params").dump());
    cfg.params.validate();

    cfg.damping_factor = get_number(doc, "damping_factor", cfg.damping_factor, "config");
    if (!(cfg.damping_factor > 0.0))
        throw ConfigError("config.damping_factor must be positive");
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned())
            throw ConfigError("config.seed must be a non-negative integer");
        cfg.seed = doc.at("seed").get<std::uint64_t>();
    }

    if (doc.contains("relax")) {
        const json& r = doc.at("relax");
        check_keys(r, "relax",
                   {"tol_momentum", "tol_force", "t_max", "dt", "mode", "check_every",
                    "newton_polish"});
        RelaxOptions& o = cfg.relax;
        o.tol_momentum = get_number(r, "tol_momentum", o.tol_momentum, "relax");
        o.tol_force = get_number(r, "tol_force", o.tol_force, "relax");
        o.t_max = get_number(r, "t_max", o.t_max, "relax");
        o.dt = get_number(r, "dt", o.dt, "relax");
        o.check_every = get_integer(r, "check_every", o.check_every, "relax");
        o.newton_polish = get_bool(r, "newton_polish", o.newton_polish, "relax");
        const std::string mode = get_string(r, "mode", "adiabatic", "relax");
        if (mode == "adiabatic")
            o.mode = IntegrationMode::adiabatic;
        else if (mode == "full")
            o.mode = IntegrationMode::full;
        else
            throw ConfigError("relax.mode must be \"adiabatic\" or \"full\"");
        if (!(o.tol_momentum > 0.0) || !(o.tol_force > 0.0))
            throw ConfigError("relax tolerances must be positive");
        if (o.t_max < 0.0 || o.dt < 0.0 || o.check_every < 1)
            throw ConfigError("relax.t_max and relax.dt must be >= 0, relax.check_every >= 1");
    }

    if (doc.contains("initial")) {
        const json& in = doc.at("initial");
        check_keys(in, "initial", {"kind", "path", "perturbation"});
        const std::string kind = get_string(in, "kind", "weak_lattice", "initial");
        if (kind == "weak_lattice") {
            cfg.initial.kind = InitialSpec::Kind::weak_lattice;
        } else if (kind == "state_file") {
            cfg.initial.kind = InitialSpec::Kind::state_file;
            if (!in.contains("path"))
                throw ConfigError("initial.path is required for kind \"state_file\"");
            cfg.initial.path = resolve(base_dir, get_string(in, "path", "", "initial"));
            if (!fs::exists(cfg.initial.path))
                throw ConfigError("initial state file not found: " + cfg.initial.path.string());
        } else {
            throw ConfigError("initial.kind must be \"weak_lattice\" or \"state_file\"");
        }
        cfg.initial.perturbation = get_number(in, "perturbation", 0.0, "initial");
        if (cfg.initial.perturbation < 0.0)
            throw ConfigError("initial.perturbation must be >= 0");
    }

    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        check_keys(s, "sweep", {"start", "end", "n_steps", "jump_threshold"});
        cfg.sweep.start = get_number(s, "start", cfg.sweep.start, "sweep");
        cfg.sweep.end = get_number(s, "end", cfg.sweep.end, "sweep");
        cfg.sweep.n_steps = static_cast<int>(get_integer(s, "n_steps", 0, "sweep"));
        cfg.sweep.jump_threshold = get_number(s, "jump_threshold", 0.1, "sweep");
        if (cfg.sweep.n_steps < 0)
            throw ConfigError("sweep.n_steps must be >= 0 (0 selects the default grid)");
        if (cfg.sweep.n_steps != 1 && cfg.sweep.start == cfg.sweep.end)
            throw ConfigError("sweep.start and sweep.end coincide");
        if (!(cfg.sweep.jump_threshold > 0.0 && cfg.sweep.jump_threshold < 0.5))
            throw ConfigError("sweep.jump_threshold must lie in (0, 0.5)");
    }

    if (doc.contains("probe")) {
        const json& p = doc.at("probe");
        check_keys(p, "probe", {"lo", "hi", "points", "method"});
        cfg.probe.use_default = !(p.contains("lo") || p.contains("hi") || p.contains("points"));
        cfg.probe.lo = get_number(p, "lo", cfg.probe.lo, "probe");
        cfg.probe.hi = get_number(p, "hi", cfg.probe.hi, "probe");
        cfg.probe.points = static_cast<int>(get_integer(p, "points", cfg.probe.points, "probe"));
        const std::string method = get_string(p, "method", "transfer", "probe");
        if (method == "transfer")
            cfg.probe.method = ProbeSpec::Method::transfer;
        else if (method == "spinmodel")
            cfg.probe.method = ProbeSpec::Method::spinmodel;
        else
            throw ConfigError("probe.method must be \"transfer\" or \"spinmodel\"");
        if (!cfg.probe.use_default && (cfg.probe.points < 2 || !(cfg.probe.hi > cfg.probe.lo)))
            throw ConfigError("probe grid needs points >= 2 and hi > lo");
    }

    if (doc.contains("phonons")) {
        const json& p = doc.at("phonons");
        check_keys(p, "phonons", {"weak_limit", "damping"});
        cfg.phonons.weak_limit = get_bool(p, "weak_limit", false, "phonons");
        cfg.phonons.damping = get_bool(p, "damping", true, "phonons");
    }

    if (doc.contains("figdata")) {
        const json& f = doc.at("figdata");
        check_keys(f, "figdata",
                   {"negative_start", "negative_end", "positive_start", "positive_end",
                    "fig1c_atoms"});
        FigdataSpec& fd = cfg.figdata;
        fd.negative_start = get_number(f, "negative_start", fd.negative_start, "figdata");
        fd.negative_end = get_number(f, "negative_end", fd.negative_end, "figdata");
        fd.positive_start = get_number(f, "positive_start", fd.positive_start, "figdata");
        fd.positive_end = get_number(f, "positive_end", fd.positive_end, "figdata");
        fd.fig1c_atoms = static_cast<int>(get_integer(f, "fig1c_atoms", fd.fig1c_atoms, "figdata"));
        if (!(fd.negative_start < fd.negative_end && fd.negative_end <= 0.0))
            throw ConfigError("figdata negative sweep must run upward from below toward <= 0");
        if (!(fd.positive_start > fd.positive_end && fd.positive_end >= 0.0))
            throw ConfigError("figdata positive sweep must run downward toward >= 0");
        if (fd.fig1c_atoms < 2)
            throw ConfigError("figdata.fig1c_atoms must be >= 2");
    }

    if (doc.contains("state_file")) {
        cfg.state_file = resolve(base_dir, get_string(doc, "state_file", "", "config"));
        if (!fs::exists(cfg.state_file))
            throw ConfigError("state file not found: " + cfg.state_file.string());
    }

    cfg.hash = fnv1a64(doc.dump());
    return cfg;
}

RunConfig load_run_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str(), path.has_parent_path() ? path.parent_path() : fs::path("."));
}

int exit_code_for(const std::exception& e)
{
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        switch (err->category()) {
        case Error::Category::config:
            return 1;
        case Error::Category::convergence:
            return 2;
        case Error::Category::numerical:
            return 3;
        }
    }
    if (dynamic_cast<const fs::filesystem_error*>(&e))
        return 1;
    return 3;
}

void cmd_relax(const RunConfig& cfg)
{
    const ChainState start = initial_state(cfg);
    SystemParams params = cfg.params;
    params.ext_damping = effective_damping(cfg, params);

    json log = {{"command", "relax"},
                {"params", json::parse(params_to_json_text(params))},
                {"seed", cfg.seed}};
    RelaxResult res;
    try {
        res = relax_to_steady_state(params, start, cfg.relax);
    } catch (const TimeoutError& e) {
        log["converged"] = false;
        log["error"] = e.what();
        log["metrics"] = {{"max_momentum", e.max_momentum()}, {"max_force", e.max_force()}};
        log["time"] = e.time();
        write_json_file(cfg, "relax_log.json", log);
        throw;
    }
    log["converged"] = true;
    log["noop"] = res.noop;
    log["polished"] = res.polished;
    log["time"] = res.time;
    log["steps"] = res.steps;
    log["metrics"] = metrics_json(res.metrics);
    log["population"] = excited_population(res.state.sigma, params);

    write_csv_file(cfg, "final_state.csv", "relax", state_csv(res.state));
    write_json_file(cfg, "relax_log.json", log);
}

void cmd_sweep(const RunConfig& cfg)
{
    const RealVector seed = initial_state(cfg).z;
    SweepResult res;
    try {
        res = run_sweep(cfg, cfg.sweep.start, cfg.sweep.end, cfg.sweep.n_steps, seed);
    } catch (const TimeoutError& e) {
        write_json_file(cfg, "sweep_log.json",
                        {{"command", "sweep"}, {"converged", false}, {"error", e.what()}});
        throw;
    }
    res.seed_description += cfg.initial.perturbation > 0.0
                                ? ", perturbed by " + fmt(cfg.initial.perturbation)
                                : std::string();

    std::ostringstream pos, sum;
    res.write_positions_csv(pos);
    res.write_summary_csv(sum);
    write_csv_file(cfg, "sweep_positions.csv", "sweep", pos.str());
    write_csv_file(cfg, "sweep_summary.csv", "sweep", sum.str());
    write_csv_file(cfg, "final_state.csv", "sweep", state_csv(res.records.back().state));
    json log = sweep_log(res);
    log["command"] = "sweep";
    log["converged"] = true;
    write_json_file(cfg, "sweep_log.json", log);
}

void cmd_phonons(const RunConfig& cfg)
{
    const RealVector z = probe_configuration(cfg);
    const ConvergenceMetrics m =
        convergence_metrics(cfg.params, state_at_rest(cfg.params, z), IntegrationMode::adiabatic);
    if (m.max_force > 1e3 * cfg.relax.tol_force)
        warn("phonons: configuration is not an equilibrium (max |F| = " + fmt(m.max_force) + ")");
    const PhononModes modes = modes_at(cfg, cfg.params, z);
    std::ostringstream os;
    modes.write_csv(os, phonon_frequency_scale(cfg.params));
    write_csv_file(cfg, "phonon_modes.csv", "phonons", os.str());
}

void cmd_spectrum(const RunConfig& cfg)
{
    const RealVector z = probe_configuration(cfg);
    const OpticalSpectrum spec = spectrum_at(cfg, cfg.params, z, cfg.probe.grid(), cfg.threads);
    std::ostringstream os;
    spec.write_csv(os);
    write_csv_file(cfg, "spectrum.csv", "spectrum", os.str());
}

const std::vector<std::string>& figdata_files()
{
    static const std::vector<std::string> files = {
        "fig1c_weak_lattice.csv",     "fig2ab_positions.csv", "fig2c_lattice_constant.csv",
        "fig3a_summary.csv",          "fig3b_phonons.csv",    "fig4a_reflectance_map.csv",
        "fig4b_peak_reflectance.csv"};
    return files;
}

void cmd_figdata(const RunConfig& cfg)
{
    const FigdataSpec& fd = cfg.figdata;
    const RealVector no_seed;
    std::fprintf(stderr, "figdata: negative-side sweep\n");
    const SweepResult neg = run_sweep(cfg, fd.negative_start, fd.negative_end, 0, no_seed);
    std::fprintf(stderr, "figdata: positive-side sweep\n");
    const SweepResult pos = run_sweep(cfg, fd.positive_start, fd.positive_end, 0, no_seed);

    // records ordered by detuning
    std::vector<const SweepRecord*> recs;
    for (const SweepRecord& r : neg.records)
        recs.push_back(&r);
    for (auto it = pos.records.rbegin(); it != pos.records.rend(); ++it)
        recs.push_back(&*it);
    const std::size_t n_rec = recs.size();

    const std::vector<double> probe = cfg.probe.grid();
    std::vector<PhononModes> modes(n_rec);
    std::vector<OpticalSpectrum> spectra(n_rec);
    parallel_for(n_rec, cfg.threads, [&](std::size_t i) {
        const SystemParams p = cfg.params.with_detuning(recs[i]->pump_detuning);
        modes[i] = modes_at(cfg, p, recs[i]->state.z);
        spectra[i] = spectrum_at(cfg, p, recs[i]->state.z, probe, 1);
    });

    std::ostringstream f1, f2ab, f2c, f3a, f3b, f4a, f4b;

    const WeakScatteringSolution ws = weak_lattice(fd.fig1c_atoms);
    f1 << "j,f_j\n";
    for (int j = 0; j < fd.fig1c_atoms; ++j)
        f1 << j + 1 << ',' << fmt(ws.fractions.f[j]) << '\n';

    f2ab << "delta,j,f_j\n";
    f3a << "delta,d_central,d_mean,pop_norm,n_segments,delta_f\n";
    f3b << "delta,j,omega_norm,gamma_norm\n";
    f4a << "delta,delta_p,R\n";
    f4b << "delta,peak_R,delta_p_peak,gap_lower,gap_upper\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n_rec; ++i) {
        const SweepRecord& r = *recs[i];
        const std::string d = fmt(r.pump_detuning);
        for (Eigen::Index j = 0; j < r.fractions.f.size(); ++j)
            f2ab << d << ',' << j + 1 << ',' << fmt(r.fractions.f[j]) << '\n';

        const double df = r.phase_slip.delta_f.empty() ? 0.0 : r.phase_slip.delta_f.front();
        f3a << d << ',' << fmt(r.d_central) << ',' << fmt(r.d_mean) << ',' << fmt(r.population)
            << ',' << r.phase_slip.n_segments() << ',' << fmt(df) << '\n';

        const SystemParams p = cfg.params.with_detuning(r.pump_detuning);
        const double scale = phonon_frequency_scale(p);
        for (int j = 0; j < modes[i].size(); ++j)
            f3b << d << ',' << j << ',' << fmt(modes[i].frequencies[j].real() / scale) << ','
                << fmt(modes[i].frequencies[j].imag() / scale) << '\n';

        const OpticalSpectrum& s = spectra[i];
        std::size_t best = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            f4a << d << ',' << fmt(s.probe_detuning[k]) << ',' << fmt(s.reflectance(k)) << '\n';
            if (s.reflectance(k) > s.reflectance(best))
                best = k;
        }
        double lo = nan, hi = nan;
        if (r.phase_slip.n_segments() == 1) {
            const BandGap gap = band_gap_edges(p, r.d_central);
            if (gap.exists) {
                lo = gap.lower;
                hi = gap.upper;
            }
        }
        f4b << d << ',' << fmt(s.reflectance(best)) << ',' << fmt(s.probe_detuning[best]) << ','
            << fmt(lo) << ',' << fmt(hi) << '\n';
    }

    f2c << "delta,d_central,d_mean,d_eff\n";
    for (const SweepRecord& r : neg.records)
        f2c << fmt(r.pump_detuning) << ',' << fmt(r.d_central) << ',' << fmt(r.d_mean) << ','
            << fmt(effective_lattice_constant(cfg.params, r.pump_detuning).lattice_constant)
            << '\n';

    const std::vector<std::string>& names = figdata_files();
    const std::string bodies[] = {f1.str(),  f2ab.str(), f2c.str(), f3a.str(),
                                  f3b.str(), f4a.str(),  f4b.str()};
    for (std::size_t k = 0; k < names.size(); ++k)
        write_csv_file(cfg, names[k], "figdata", bodies[k]);
}

int run_command(const std::string& name, const RunConfig& cfg)
{
    try {
        if (name == "relax")
            cmd_relax(cfg);
        else if (name == "sweep")
            cmd_sweep(cfg);
        else if (name == "phonons")
            cmd_phonons(cfg);
        else if (name == "spectrum")
            cmd_spectrum(cfg);
        else if (name == "figdata")
            cmd_figdata(cfg);
        else
            throw ConfigError("unknown command '" + name + "'");
    } catch (const std::exception& e) {
        std::cerr << "selforg " << name << ": error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return 0;
}

} // namespace selforg::cli
