// Python bindings for the laboratory core.  The surface mirrors the C++
// API: phase-space states as numpy arrays, closed-form beam correlations,
// the Wigner/Moyal pipeline, plane-wave field evolution, the hybrid
// measurement models, and the scenario runner used by the CLI.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstring>
#include <vector>

#include "phasewave/beam.hpp"
#include "phasewave/em.hpp"
#include "phasewave/errors.hpp"
#include "phasewave/grid.hpp"
#include "phasewave/hamiltonian.hpp"
#include "phasewave/hybrid.hpp"
#include "phasewave/lambda_rep.hpp"
#include "phasewave/propagator.hpp"
#include "phasewave/scenario.hpp"
#include "phasewave/wavefunction.hpp"
#include "phasewave/wigner.hpp"

namespace py = pybind11;
using namespace phasewave;

namespace {

py::array_t<std::complex<double>> values_array(const KvnWaveFunction& psi) {
    py::array_t<std::complex<double>> out({psi.grid.n_q, psi.grid.n_p});
    std::memcpy(out.mutable_data(), psi.values.data(),
                psi.values.size() * sizeof(std::complex<double>));
    return out;
}

void set_values(KvnWaveFunction& psi, const py::array_t<std::complex<double>>& values) {
    const auto buf = values.request();
    if (buf.ndim != 2 || buf.shape[0] != psi.grid.n_q || buf.shape[1] != psi.grid.n_p) {
        throw ShapeError("values must have shape (n_q, n_p) = (" +
                         std::to_string(psi.grid.n_q) + ", " + std::to_string(psi.grid.n_p) +
                         ")");
    }
    const auto view = values.unchecked<2>();
    for (int i = 0; i < psi.grid.n_q; ++i)
        for (int j = 0; j < psi.grid.n_p; ++j) psi.at(i, j) = view(i, j);
}

py::array_t<double> field_2d(const std::vector<double>& flat, int n_q, int n_p) {
    py::array_t<double> out({n_q, n_p});
    std::memcpy(out.mutable_data(), flat.data(), flat.size() * sizeof(double));
    return out;
}

py::dict check_dict(const CheckResult& c) {
    py::dict d;
    d["name"] = c.name;
    d["passed"] = c.passed;
    d["measured"] = c.measured;
    d["tolerance"] = c.tolerance;
    d["detail"] = c.detail;
    return d;
}

py::dict result_dict(const ScenarioResult& r) {
    py::dict d;
    d["scenario"] = r.scenario;
    d["preset"] = r.preset;
    d["passed"] = r.passed;
    py::list checks;
    for (const CheckResult& c : r.checks) checks.append(check_dict(c));
    d["checks"] = checks;
    d["outputs"] = r.outputs;
    d["manifest_path"] = r.manifest_path;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hilbert-space classical mechanics laboratory";

    const py::object err_base = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", err_base.ptr());
    py::register_exception<IoError>(m, "IoError", err_base.ptr());
    py::register_exception<OutflowError>(m, "OutflowError", err_base.ptr());

    py::class_<PhaseSpaceGrid>(m, "Grid")
        .def_readonly("q_min", &PhaseSpaceGrid::q_min)
        .def_readonly("q_max", &PhaseSpaceGrid::q_max)
        .def_readonly("n_q", &PhaseSpaceGrid::n_q)
        .def_readonly("p_min", &PhaseSpaceGrid::p_min)
        .def_readonly("p_max", &PhaseSpaceGrid::p_max)
        .def_readonly("n_p", &PhaseSpaceGrid::n_p)
        .def_readonly("periodic_q", &PhaseSpaceGrid::periodic_q)
        .def_readonly("periodic_p", &PhaseSpaceGrid::periodic_p)
        .def("dq", &PhaseSpaceGrid::dq)
        .def("dp", &PhaseSpaceGrid::dp)
        .def("q_at", &PhaseSpaceGrid::q_at)
        .def("p_at", &PhaseSpaceGrid::p_at)
        .def("__repr__", [](const PhaseSpaceGrid& g) {
            return "Grid(q=[" + std::to_string(g.q_min) + ", " + std::to_string(g.q_max) +
                   "), n_q=" + std::to_string(g.n_q) + ", p=[" + std::to_string(g.p_min) +
                   ", " + std::to_string(g.p_max) + "), n_p=" + std::to_string(g.n_p) + ")";
        });

    m.def("make_grid", &make_grid, py::arg("q_min"), py::arg("q_max"), py::arg("n_q"),
          py::arg("p_min"), py::arg("p_max"), py::arg("n_p"), py::arg("periodic_q") = false,
          py::arg("periodic_p") = false);

    py::enum_<Representation>(m, "Representation")
        .value("QP", Representation::QP)
        .value("QLambdaP", Representation::QLambdaP);

    py::class_<KvnWaveFunction>(m, "WaveFunction")
        .def_readonly("grid", &KvnWaveFunction::grid)
        .def_readonly("rep", &KvnWaveFunction::rep)
        .def_property("values", &values_array, &set_values,
                      "complex amplitudes, shape (n_q, n_p)")
        .def("norm", [](const KvnWaveFunction& psi) { return norm(psi); })
        .def("normalize", [](KvnWaveFunction& psi) { return normalize(psi); },
             "scale to unit norm in place, returns the previous norm")
        .def("density", [](const KvnWaveFunction& psi) {
            return field_2d(density(psi), psi.grid.n_q, psi.grid.n_p);
        });

    m.def("gaussian_state", &gaussian_state, py::arg("grid"), py::arg("q0"), py::arg("p0"),
          py::arg("sigma_q"), py::arg("sigma_p"),
          "normalized Gaussian packet; sigmas are density standard deviations");

    m.def(
        "make_wavefunction",
        [](const PhaseSpaceGrid& grid,
           const std::function<std::complex<double>(double, double)>& f) {
            return make_wavefunction(grid, f);
        },
        py::arg("grid"), py::arg("sampler"));

    m.def("inner_product", &inner_product, py::arg("a"), py::arg("b"));

    py::class_<HamiltonianSpec>(m, "Hamiltonian")
        .def_static("free", &HamiltonianSpec::free_particle, py::arg("mass"))
        .def_static("harmonic", &HamiltonianSpec::harmonic, py::arg("mass"), py::arg("omega"))
        .def_static("quartic", &HamiltonianSpec::quartic, py::arg("mass"), py::arg("omega"),
                    py::arg("lambda4"))
        .def_static("polynomial", &HamiltonianSpec::polynomial_v, py::arg("mass"),
                    py::arg("v_coeffs"));

    m.def(
        "propagate",
        [](const KvnWaveFunction& psi, const HamiltonianSpec& h, double t, int steps) {
            return propagate_qp(psi, h, t, steps);
        },
        py::arg("psi"), py::arg("hamiltonian"), py::arg("t"), py::arg("steps") = 256,
        "advect a (q, p) amplitude field along the classical flow");

    m.def("to_lambda", &to_lambda_rep, py::arg("psi"));
    m.def("from_lambda", &from_lambda_rep, py::arg("psi_lambda"), py::arg("p_min"),
          py::arg("p_max"), py::arg("periodic_p") = false);
    m.def("propagate_lambda", &propagate_lambda, py::arg("psi_lambda"), py::arg("hamiltonian"),
          py::arg("t"), py::arg("dt"));

    // Wigner / Moyal pipeline.
    py::class_<QuantumState1D>(m, "QuantumState1D")
        .def_readonly("q_min", &QuantumState1D::q_min)
        .def_readonly("q_max", &QuantumState1D::q_max)
        .def_readonly("n", &QuantumState1D::n)
        .def_readonly("hbar", &QuantumState1D::hbar)
        .def_property_readonly("values", [](const QuantumState1D& psi) {
            py::array_t<std::complex<double>> out(psi.values.size());
            std::memcpy(out.mutable_data(), psi.values.data(),
                        psi.values.size() * sizeof(std::complex<double>));
            return out;
        });

    m.def("harmonic_eigenstate", &harmonic_eigenstate, py::arg("level"), py::arg("q_min"),
          py::arg("q_max"), py::arg("n"), py::arg("hbar"), py::arg("mass"), py::arg("omega"));

    py::class_<WignerFunction>(m, "Wigner")
        .def_readonly("grid", &WignerFunction::grid)
        .def_readonly("hbar", &WignerFunction::hbar)
        .def_property_readonly("values", [](const WignerFunction& w) {
            return field_2d(w.values, w.grid.n_q, w.grid.n_p);
        });

    m.def("wigner_from_psi", &wigner_from_psi, py::arg("psi"));
    m.def("gaussian_wigner", &gaussian_wigner, py::arg("grid"), py::arg("q0"), py::arg("p0"),
          py::arg("sigma_q"), py::arg("sigma_p"), py::arg("hbar"));
    m.def("propagate_moyal", &propagate_moyal, py::arg("w"), py::arg("hamiltonian"),
          py::arg("t"), py::arg("dt"));
    m.def(
        "classical_limit_gap",
        [](const WignerFunction& w0, const HamiltonianSpec& h, double t, double dt,
           const std::vector<double>& hbars, int advect_steps) {
            py::list out;
            for (const GapPoint& g : classical_limit_gap(w0, h, t, dt, hbars, advect_steps)) {
                out.append(py::make_tuple(g.hbar, g.gap_l2));
            }
            return out;
        },
        py::arg("w0"), py::arg("hamiltonian"), py::arg("t"), py::arg("dt"), py::arg("hbars"),
        py::arg("advect_steps") = 1024,
        "[(hbar, L2 gap to the advected classical field), ...]");

    // Six-vector field states.
    py::enum_<Polarization>(m, "Polarization")
        .value("Circular", Polarization::Circular)
        .value("Linear", Polarization::Linear);

    py::class_<EmFieldState>(m, "EmFieldState")
        .def_readonly("nx", &EmFieldState::nx)
        .def_readonly("ny", &EmFieldState::ny)
        .def_readonly("nz", &EmFieldState::nz)
        .def_readonly("dx", &EmFieldState::dx);

    m.def("make_plane_wave", &make_plane_wave, py::arg("nx"), py::arg("ny"), py::arg("nz"),
          py::arg("dx"), py::arg("mx"), py::arg("my"), py::arg("mz"), py::arg("polarization"));
    m.def("propagate_em", &propagate_em, py::arg("state"), py::arg("t"));
    m.def("total_energy", &total_energy, py::arg("state"));
    m.def("max_divergence", &max_divergence, py::arg("state"));

    // Beam correlations.
    py::class_<BeamState>(m, "BeamState")
        .def_property_readonly("amplitudes", [](const BeamState& s) {
            py::array_t<std::complex<double>> out(4);
            std::memcpy(out.mutable_data(), s.c.data(), 4 * sizeof(std::complex<double>));
            return out;
        });

    m.def("bell_state", &bell_state);
    m.def("product_state", &product_state, py::arg("theta_pol"), py::arg("theta_path"));
    m.def("schmidt_state", &schmidt_state, py::arg("concurrence"));
    m.def(
        "make_beam_state",
        [](const std::array<std::complex<double>, 4>& amplitudes) {
            return make_beam_state(amplitudes);
        },
        py::arg("amplitudes"));
    m.def("correlation", &correlation, py::arg("state"), py::arg("theta_pol"),
          py::arg("theta_path"));
    m.def("chsh", &chsh, py::arg("state"), py::arg("a"), py::arg("a_prime"), py::arg("b"),
          py::arg("b_prime"));
    m.def(
        "chsh_max_scan",
        [](const BeamState& state, int grid_n) {
            const ChshScanResult r = chsh_max_scan(state, grid_n);
            py::dict d;
            d["s_max"] = r.s_max;
            d["angles"] = py::make_tuple(r.a, r.a_prime, r.b, r.b_prime);
            return d;
        },
        py::arg("state"), py::arg("grid_n"));
    m.def("chsh_max_closed_form", &chsh_max_closed_form, py::arg("concurrence"));
    m.def(
        "schmidt_decompose",
        [](const BeamState& state) {
            const SchmidtResult r = schmidt_decompose(state);
            py::dict d;
            d["lambda1"] = r.lambda1;
            d["lambda2"] = r.lambda2;
            d["concurrence"] = r.concurrence;
            return d;
        },
        py::arg("state"));
    m.def(
        "mermin_peres_witness",
        [](const BeamState& state) {
            const MerminPeresResult r = mermin_peres_witness(state);
            py::dict d;
            d["witness"] = r.witness;
            d["noncontextual_bound"] = r.noncontextual_bound;
            d["rows"] = py::make_tuple(r.row_values[0], r.row_values[1], r.row_values[2]);
            d["cols"] = py::make_tuple(r.col_values[0], r.col_values[1], r.col_values[2]);
            return d;
        },
        py::arg("state"));

    // Hybrid measurement models.
    py::class_<HybridSpinKvnState>(m, "HybridState")
        .def_readonly("c_plus", &HybridSpinKvnState::c_plus)
        .def_readonly("c_minus", &HybridSpinKvnState::c_minus)
        .def_readonly("psi_plus", &HybridSpinKvnState::psi_plus)
        .def_readonly("psi_minus", &HybridSpinKvnState::psi_minus);

    m.def("make_hybrid_state", &make_hybrid_state, py::arg("c_plus"), py::arg("c_minus"),
          py::arg("psi_plus"), py::arg("psi_minus"));
    m.def("sg_propagate", &sg_propagate, py::arg("state"), py::arg("mass"), py::arg("gamma"),
          py::arg("t"), py::arg("steps") = 256);
    m.def("reduced_spin_coherence", &reduced_spin_coherence, py::arg("state"));
    m.def(
        "sg_outcome_histogram",
        [](const HybridSpinKvnState& state, double q_split) {
            const SgHistogram h = sg_outcome_histogram(state, q_split);
            return py::make_tuple(h.p_up, h.p_down);
        },
        py::arg("state"), py::arg("q_split") = 0.0);

    py::class_<MeterMomentState>(m, "MeterState")
        .def_readonly("mean", &MeterMomentState::mean)
        .def_readonly("cov", &MeterMomentState::cov)
        .def_readonly("g", &MeterMomentState::g)
        .def_readonly("m", &MeterMomentState::m)
        .def_readonly("meter_m", &MeterMomentState::meter_m)
        .def_readonly("omega", &MeterMomentState::omega);

    m.def("make_meter_state", &make_meter_state, py::arg("mean"), py::arg("cov"), py::arg("g"),
          py::arg("m"), py::arg("meter_m"), py::arg("omega"));
    m.def("momentum_meter_evolve", &momentum_meter_evolve, py::arg("state"), py::arg("t"));
    m.def("meter_transition", &meter_transition, py::arg("g"), py::arg("m"), py::arg("meter_m"),
          py::arg("omega"), py::arg("t"));
    m.def(
        "meter_pa_decomposition",
        [](const MeterMomentState& state, double t) {
            const MeterReadout r = meter_pa_decomposition(state, t);
            py::dict d;
            d["observable_term"] = r.observable_term;
            d["hidden_term"] = r.hidden_term;
            d["total_shift"] = r.total_shift;
            return d;
        },
        py::arg("state"), py::arg("t"));
    m.def(
        "position_rate_report",
        [](const MeterMomentState& state) {
            const PositionRateReport r = position_rate_report(state);
            py::dict d;
            d["observable_rate"] = r.observable_rate;
            d["hidden_rate"] = r.hidden_rate;
            d["total_rate"] = r.total_rate;
            return d;
        },
        py::arg("state"));

    // Scenario runner (same engine as the CLI).
    m.def(
        "run_scenario",
        [](const std::string& config_text, const std::string& out_dir) {
            return result_dict(run_scenario_json(config_text, out_dir));
        },
        py::arg("config_text"), py::arg("out_dir"));
    m.def(
        "run_preset",
        [](const std::string& name, const std::string& out_dir) {
            return result_dict(run_preset(name, out_dir));
        },
        py::arg("name"), py::arg("out_dir"));
    m.def("presets", &preset_table, "[(name, description), ...]");
    m.def("preset_config", &preset_config, py::arg("name"));
}
