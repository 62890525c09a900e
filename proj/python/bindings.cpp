#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "selforg/analytics.hpp"
#include "selforg/coherence.hpp"
#include "selforg/continuation.hpp"
#include "selforg/dynamics.hpp"
#include "selforg/errors.hpp"
#include "selforg/io.hpp"
#include "selforg/optics.hpp"
#include "selforg/phonons.hpp"

namespace py = pybind11;
using namespace selforg;

namespace {

py::dict spectrum_dict(const OpticalSpectrum& s)
{
    std::vector<double> refl(s.size()), trans(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        refl[i] = s.reflectance(i);
        trans[i] = s.transmittance(i);
    }
    py::dict d;
    d["probe_detuning"] = s.probe_detuning;
    d["r"] = s.r;
    d["t"] = s.t;
    d["R"] = refl;
    d["T"] = trans;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Self-ordering of laser-driven atoms along a waveguide";
    m.attr("__version__") = version_string;

    auto base = py::register_exception<Error>(m, "SelforgError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base);
    py::register_exception<InvalidStateError>(m, "InvalidStateError", base);
    py::register_exception<DegenerateConfigurationError>(m, "DegenerateConfigurationError", base);
    py::register_exception<OrderingViolationError>(m, "OrderingViolationError", base);
    py::register_exception<ParameterDomainError>(m, "ParameterDomainError", base);
    py::register_exception<IllConditionedError>(m, "IllConditionedError", base);
    py::register_exception<DivergenceError>(m, "DivergenceError", base);
    py::register_exception<NumericalError>(m, "NumericalError", base);
    py::register_exception<TimeoutError>(m, "TimeoutError", base);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def(py::init([](int n_atoms, double gamma_1d, double rabi, double pump_detuning,
                         double recoil, double ext_damping) {
                 SystemParams p{n_atoms, gamma_1d, rabi, pump_detuning, recoil, ext_damping};
                 p.validate();
                 return p;
             }),
             py::arg("n_atoms") = 150, py::arg("gamma_1d") = 0.25, py::arg("rabi") = 0.05,
             py::arg("pump_detuning") = -15.0, py::arg("recoil") = 1e-3,
             py::arg("ext_damping") = 0.0)
        .def_readwrite("n_atoms", &SystemParams::n_atoms)
        .def_readwrite("gamma_1d", &SystemParams::gamma_1d)
        .def_readwrite("rabi", &SystemParams::rabi)
        .def_readwrite("pump_detuning", &SystemParams::pump_detuning)
        .def_readwrite("recoil", &SystemParams::recoil)
        .def_readwrite("ext_damping", &SystemParams::ext_damping)
        .def("validate", &SystemParams::validate)
        .def("with_detuning", &SystemParams::with_detuning)
        .def("to_json", [](const SystemParams& p) { return params_to_json_text(p); })
        .def_static("from_json", &params_from_json_text)
        .def("__eq__", [](const SystemParams& a, const SystemParams& b) { return a == b; })
        .def("__repr__", [](const SystemParams& p) {
            return "SystemParams(" + params_to_json_text(p) + ")";
        });

    py::class_<ChainState>(m, "ChainState")
        .def(py::init<>())
        .def_readwrite("z", &ChainState::z)
        .def_readwrite("p", &ChainState::p)
        .def_readwrite("sigma", &ChainState::sigma)
        .def_property_readonly("size", &ChainState::size)
        .def("validate", &ChainState::validate);

    m.def("state_at_rest", &state_at_rest, py::arg("params"), py::arg("z"));
    m.def("fractional_positions",
          [](const RealVector& z) { return RealVector(fractional_positions(z).f); });
    m.def("single_atom_population", &single_atom_population);
    m.def("phonon_frequency_scale", &phonon_frequency_scale);
    m.def("default_ext_damping", &default_ext_damping);

    m.def("solve_instantaneous", &solve_instantaneous, py::arg("params"), py::arg("z"));
    m.def("excited_population", &excited_population, py::arg("sigma"), py::arg("params"));
    m.def("force", &force, py::arg("params"), py::arg("z"), py::arg("sigma"));

    py::enum_<IntegrationMode>(m, "IntegrationMode")
        .value("full", IntegrationMode::full)
        .value("adiabatic", IntegrationMode::adiabatic)
        .value("frozen_coherence", IntegrationMode::frozen_coherence);

    py::class_<RelaxOptions>(m, "RelaxOptions")
        .def(py::init<>())
        .def_readwrite("tol_momentum", &RelaxOptions::tol_momentum)
        .def_readwrite("tol_force", &RelaxOptions::tol_force)
        .def_readwrite("t_max", &RelaxOptions::t_max)
        .def_readwrite("dt", &RelaxOptions::dt)
        .def_readwrite("mode", &RelaxOptions::mode)
        .def_readwrite("check_every", &RelaxOptions::check_every)
        .def_readwrite("newton_polish", &RelaxOptions::newton_polish)
        .def_readwrite("polish_trigger", &RelaxOptions::polish_trigger);

    py::class_<ConvergenceMetrics>(m, "ConvergenceMetrics")
        .def_readonly("max_momentum", &ConvergenceMetrics::max_momentum)
        .def_readonly("max_force", &ConvergenceMetrics::max_force)
        .def_readonly("com_momentum", &ConvergenceMetrics::com_momentum)
        .def_readonly("com_force", &ConvergenceMetrics::com_force);

    py::class_<RelaxResult>(m, "RelaxResult")
        .def_readonly("state", &RelaxResult::state)
        .def_readonly("metrics", &RelaxResult::metrics)
        .def_readonly("time", &RelaxResult::time)
        .def_readonly("steps", &RelaxResult::steps)
        .def_readonly("noop", &RelaxResult::noop)
        .def_readonly("polished", &RelaxResult::polished);

    m.def("relax_to_steady_state", &relax_to_steady_state, py::arg("params"),
          py::arg("initial"), py::arg("options") = RelaxOptions{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<WeakScatteringSolution>(m, "WeakScatteringSolution")
        .def_readonly("lattice_constant", &WeakScatteringSolution::lattice_constant)
        .def_readonly("z", &WeakScatteringSolution::z)
        .def_property_readonly("f",
                               [](const WeakScatteringSolution& w) { return w.fractions.f; })
        .def_readonly("energy", &WeakScatteringSolution::energy)
        .def_readonly("energy_asymptote", &WeakScatteringSolution::energy_asymptote);
    m.def("weak_lattice", &weak_lattice, py::arg("n_atoms"));
    m.def("potential_energy", &potential_energy, py::arg("z"));
    m.def("effective_lattice_constant", [](const SystemParams& p, double detuning) {
        return effective_lattice_constant(p, detuning).lattice_constant;
    });
    m.def("weak_phonon_spectrum", &weak_phonon_spectrum, py::arg("params"),
          py::arg("n_atoms"));
    m.def("cavity_model", [](const SystemParams& p, int n) {
        const CavityEstimate c = cavity_model(p, n);
        return std::pair{c.peak_reflectance, c.fwhm};
    });

    m.def("stiffness_matrix", &stiffness_matrix, py::arg("params"), py::arg("z"));
    m.def("damping_matrix", &damping_matrix, py::arg("params"), py::arg("z"));
    m.def(
        "normal_modes",
        [](const SystemParams& p, const RealVector& z, bool damping) {
            const Linearization lin = linearize(p, z);
            const RealMatrix l =
                damping ? lin.damping : RealMatrix::Zero(z.size(), z.size()).eval();
            return ComplexVector(normal_modes(lin.stiffness, l, p).frequencies);
        },
        py::arg("params"), py::arg("z"), py::arg("damping") = true);

    m.def(
        "spectrum",
        [](const SystemParams& p, const RealVector& z, const std::vector<double>& grid,
           const std::string& method, int threads) {
            if (method == "transfer")
                return spectrum_dict(chain_spectrum_transfer(p, z, grid, threads));
            if (method == "spinmodel")
                return spectrum_dict(chain_spectrum_spinmodel(p, z, grid, threads));
            throw ConfigError("unknown spectrum method '" + method + "'");
        },
        py::arg("params"), py::arg("z"), py::arg("probe_grid"),
        py::arg("method") = "transfer", py::arg("threads") = 1);
    m.def("default_probe_grid", &default_probe_grid);
    m.def("band_gap_edges", [](const SystemParams& p, double d) {
        const BandGap g = band_gap_edges(p, d);
        return py::make_tuple(g.exists, g.lower, g.upper);
    });

    m.def("lattice_constant", &lattice_constant, py::arg("z"));
    m.def("default_sweep_grid", &default_sweep_grid);
    m.def(
        "adiabatic_sweep",
        [](const SystemParams& p, const std::vector<double>& grid, double damping_factor,
           const RealVector& seed) {
            SweepOptions opt;
            opt.damping_factor = damping_factor;
            SweepResult res;
            {
                py::gil_scoped_release release;
                res = adiabatic_sweep(p, grid, opt, seed);
            }
            py::list out;
            for (const SweepRecord& r : res.records) {
                py::dict d;
                d["delta"] = r.pump_detuning;
                d["z"] = r.state.z;
                d["f"] = r.fractions.f;
                d["population"] = r.population;
                d["d_central"] = r.d_central;
                d["d_mean"] = r.d_mean;
                d["n_segments"] = r.phase_slip.n_segments();
                d["delta_f"] = r.phase_slip.delta_f;
                out.append(d);
            }
            return out;
        },
        py::arg("params"), py::arg("grid"), py::arg("damping_factor") = 1.0,
        py::arg("seed") = RealVector());
}
