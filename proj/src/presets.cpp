#include "phasewave/scenario.hpp"

#include <utility>

#include "phasewave/errors.hpp"

namespace phasewave {

namespace {

struct Preset {
    const char* name;
    const char* description;
    const char* config;
};

// Built-in configurations.  Tolerances are pinned here, not computed, so a
// regression in any pipeline shows up as a failed check rather than a
// silently loosened bound.
const Preset kPresets[] = {
    {"harmonic_period_return",
     "harmonic advection over one period: exact return, norm conserved",
     R"({
  "scenario": "kvn_qp",
  "grid": {"q_min": -6.0, "q_max": 6.0, "n_q": 256, "p_min": -6.0, "p_max": 6.0, "n_p": 256},
  "hamiltonian": {"kind": "harmonic", "mass": 1.0, "omega": 1.0},
  "initial": {"q0": 1.5, "p0": 0.0, "sigma_q": 0.7, "sigma_p": 0.7},
  "time": {"t_final": 6.283185307179586, "n_frames": 8},
  "checks": {
    "norm_tolerance": 1e-6,
    "return": {"time": 6.283185307179586, "tolerance": 1e-9}
  },
  "output": {"final_state": true}
})"},

    {"superselection_harmonic",
     "harmonic advection: densities blind to a random initial phase field",
     R"({
  "scenario": "kvn_qp",
  "seed": 20260818,
  "grid": {"q_min": -6.0, "q_max": 6.0, "n_q": 256, "p_min": -6.0, "p_max": 6.0, "n_p": 256},
  "hamiltonian": {"kind": "harmonic", "mass": 1.0, "omega": 1.0},
  "initial": {"q0": 1.0, "p0": 0.0, "sigma_q": 0.7, "sigma_p": 0.7},
  "time": {"t_final": 1.0, "n_frames": 2},
  "checks": {
    "norm_tolerance": 1e-6,
    "superselection": {"tolerance": 1e-6}
  }
})"},

    {"superselection_quartic",
     "quartic advection: densities blind to a random initial phase field",
     R"({
  "scenario": "kvn_qp",
  "seed": 711,
  "grid": {"q_min": -6.0, "q_max": 6.0, "n_q": 256, "p_min": -10.0, "p_max": 10.0, "n_p": 384},
  "hamiltonian": {"kind": "quartic", "mass": 1.0, "omega": 1.0, "lambda4": 1.0},
  "initial": {"q0": 0.5, "p0": 0.0, "sigma_q": 0.6, "sigma_p": 0.6},
  "time": {"t_final": 0.8, "n_frames": 2, "flow_steps": 512},
  "checks": {
    "norm_tolerance": 1e-5,
    "superselection": {"tolerance": 1e-6}
  }
})"},

    {"lambda_free",
     "free motion in the dual representation vs direct advection",
     R"({
  "scenario": "kvn_lambda",
  "grid": {"q_min": -8.0, "q_max": 8.0, "n_q": 256, "p_min": -6.0, "p_max": 6.0, "n_p": 256},
  "hamiltonian": {"kind": "free", "mass": 1.0},
  "initial": {"q0": -1.0, "p0": 0.8, "sigma_q": 0.7, "sigma_p": 0.6},
  "time": {"t_final": 2.0, "n_frames": 4, "dt": 0.5},
  "checks": {
    "roundtrip_tolerance": 1e-12,
    "intertwine_tolerance": 1e-3,
    "norm_tolerance": 1e-6
  }
})"},

    {"lambda_harmonic",
     "harmonic motion in the dual representation vs direct advection",
     R"({
  "scenario": "kvn_lambda",
  "grid": {"q_min": -6.0, "q_max": 6.0, "n_q": 256, "p_min": -6.0, "p_max": 6.0, "n_p": 256},
  "hamiltonian": {"kind": "harmonic", "mass": 1.0, "omega": 1.0},
  "initial": {"q0": 1.0, "p0": 0.0, "sigma_q": 0.7, "sigma_p": 0.7},
  "time": {"t_final": 2.0, "n_frames": 4, "dt": 2e-3},
  "checks": {
    "roundtrip_tolerance": 1e-12,
    "intertwine_tolerance": 1e-3,
    "norm_tolerance": 1e-6
  }
})"},

    {"moyal_quartic_gap",
     "quartic phase-space evolution: quantum-classical gap scaling with hbar^2",
     R"({
  "scenario": "moyal_gap",
  "grid": {"q_min": -4.0, "q_max": 4.0, "n_q": 128, "p_min": -5.0, "p_max": 5.0, "n_p": 128},
  "hamiltonian": {"kind": "quartic", "mass": 1.0, "omega": 1.0, "lambda4": 1.0},
  "initial": {"q0": 0.3, "p0": 0.0, "sigma_q": 0.35, "sigma_p": 0.35},
  "time": {"t_final": 0.5, "dt": 2e-4, "advect_steps": 1024},
  "hbars": [0.1, 0.2, 0.4],
  "checks": {"expect_monotone": true, "ratio_min": 3.0, "ratio_max": 5.0},
  "output": {"wigner_final": true}
})"},

    {"moyal_harmonic_gap",
     "harmonic phase-space evolution: no quantum-classical gap at any hbar",
     R"({
  "scenario": "moyal_gap",
  "grid": {"q_min": -6.0, "q_max": 6.0, "n_q": 192, "p_min": -6.0, "p_max": 6.0, "n_p": 192},
  "hamiltonian": {"kind": "harmonic", "mass": 1.0, "omega": 1.0},
  "initial": {"q0": 1.0, "p0": 0.0, "sigma_q": 1.0, "sigma_p": 1.0},
  "time": {"t_final": 0.5, "dt": 9e-4, "advect_steps": 512},
  "hbars": [0.1, 0.4],
  "checks": {"max_gap": 1e-6}
})"},

    {"em_plane_wave",
     "circular plane wave on a 16^3 grid: exact period return, unit flux",
     R"({
  "scenario": "em_wave",
  "grid": {"nx": 16, "ny": 16, "nz": 16, "dx": 0.5},
  "wave": {"axis": "z", "mode": 1, "polarization": "circular"},
  "time": {"t_final": 8.0, "n_frames": 8, "residual_dt": 1e-3},
  "checks": {
    "period_return_tolerance": 1e-10,
    "energy_drift_tolerance": 1e-10,
    "continuity_tolerance": 1e-4,
    "poynting_axis_tolerance": 1e-12,
    "divergence_tolerance": 1e-12
  },
  "output": {"final_field": true}
})"},

    {"em_plane_wave_linear",
     "linear plane wave: continuity residual with second-order convergence",
     R"({
  "scenario": "em_wave",
  "grid": {"nx": 1, "ny": 1, "nz": 64, "dx": 0.2},
  "wave": {"axis": "z", "mode": 1, "polarization": "linear"},
  "time": {"t_final": 12.8, "n_frames": 8, "residual_dt": 1e-3},
  "checks": {
    "period_return_tolerance": 1e-10,
    "energy_drift_tolerance": 1e-10,
    "continuity_tolerance": 1e-4,
    "convergence_order": true,
    "divergence_tolerance": 1e-12
  }
})"},

    {"chsh_bell",
     "maximally entangled beam state: CHSH reaches 2*sqrt(2)",
     R"({
  "scenario": "chsh_scan",
  "state": {"type": "bell"},
  "scan_grids": [8, 16, 32, 64],
  "checks": {
    "expect_canonical_s": 2.8284271247461903,
    "canonical_tolerance": 1e-9,
    "closed_form_tolerance": 0.02,
    "expect_monotone": true
  }
})"},

    {"chsh_product",
     "product beam state: scan maximum stays at the classical bound 2",
     R"({
  "scenario": "chsh_scan",
  "state": {"type": "product", "theta_pol": 0.3, "theta_path": 1.1},
  "scan_grids": [8, 16, 32, 64],
  "checks": {
    "closed_form_tolerance": 0.02,
    "expect_monotone": true,
    "product_bound": true
  }
})"},

    {"chsh_partial_05",
     "concurrence 0.5 beam state: scan maximum at 2*sqrt(1.25)",
     R"({
  "scenario": "chsh_scan",
  "state": {"type": "schmidt", "concurrence": 0.5},
  "scan_grids": [8, 16, 32, 64],
  "checks": {
    "closed_form_tolerance": 0.02,
    "expect_monotone": true
  }
})"},

    {"chsh_partial_08",
     "concurrence 0.8 beam state: scan maximum at 2*sqrt(1.64)",
     R"({
  "scenario": "chsh_scan",
  "state": {"type": "schmidt", "concurrence": 0.8},
  "scan_grids": [8, 16, 32, 64],
  "checks": {
    "closed_form_tolerance": 0.02,
    "expect_monotone": true
  }
})"},

    {"mermin_peres",
     "parity witness on the 3x3 observable square: 6 vs noncontextual 4",
     R"({
  "scenario": "mermin_peres",
  "checks": {"identity_tolerance": 1e-12}
})"},

    {"stern_gerlach",
     "balanced two-branch deflection: parabolas, decoherence, 50/50 outcomes",
     R"({
  "scenario": "stern_gerlach",
  "grid": {"q_min": -11.0, "q_max": 11.0, "n_q": 1024, "p_min": -6.0, "p_max": 6.0, "n_p": 768},
  "mass": 1.0,
  "gamma": 1.0,
  "spin": {"c_plus": [0.7071067811865476, 0.0], "c_minus": [0.7071067811865476, 0.0]},
  "initial": {"q0": 0.0, "p0": 0.0, "sigma_q": 0.4, "sigma_p": 0.35},
  "time": {"t_final": 3.0, "n_frames": 8},
  "checks": {
    "parabola_tolerance": 1e-4,
    "final_coherence_max": 1e-3,
    "histogram_tolerance": 1e-3,
    "overlap_law_tolerance": 1e-4,
    "norm_tolerance": 1e-8,
    "q_split": 0.0
  }
})"},

    {"stern_gerlach_biased",
     "80/20 two-branch deflection: outcome masses follow the spin weights",
     R"({
  "scenario": "stern_gerlach",
  "grid": {"q_min": -11.0, "q_max": 11.0, "n_q": 1024, "p_min": -6.0, "p_max": 6.0, "n_p": 768},
  "mass": 1.0,
  "gamma": 1.0,
  "spin": {"c_plus": [0.8944271909999159, 0.0], "c_minus": [0.4472135954999579, 0.0]},
  "initial": {"q0": 0.0, "p0": 0.0, "sigma_q": 0.4, "sigma_p": 0.35},
  "time": {"t_final": 3.0, "n_frames": 8},
  "checks": {
    "parabola_tolerance": 1e-4,
    "final_coherence_max": 1e-3,
    "histogram_tolerance": 1e-3,
    "overlap_law_tolerance": 1e-4,
    "norm_tolerance": 1e-8,
    "q_split": 0.0
  }
})"},

    {"momentum_meter_free",
     "free system read by a momentum meter: observable vs hidden shift",
     R"({
  "scenario": "momentum_meter",
  "params": {"g": 0.2, "mass": 1.0, "meter_mass": 10.0, "omega": 0.0},
  "initial": {"mean": [0.0, 1.2, 0.0, 0.0, 0.5, 0.3],
              "sigma": [0.1, 0.1, 0.2, 0.2, 0.3, 0.3]},
  "time": {"t_final": 2.0, "n_frames": 8},
  "checks": {"decomposition_tolerance": 1e-12, "rate_tolerance": 1e-9}
})"},

    {"momentum_meter_harmonic",
     "oscillator read by a momentum meter over one period",
     R"({
  "scenario": "momentum_meter",
  "params": {"g": 0.2, "mass": 1.0, "meter_mass": 10.0, "omega": 1.0},
  "initial": {"mean": [0.4, 1.2, 0.0, 0.0, 0.5, 0.3],
              "sigma": [0.1, 0.1, 0.2, 0.2, 0.3, 0.3]},
  "time": {"t_final": 6.283185307179586, "n_frames": 64},
  "checks": {"decomposition_tolerance": 1e-12, "rate_tolerance": 5e-3}
})"},
};

}  // namespace

std::vector<std::pair<std::string, std::string>> preset_table() {
    std::vector<std::pair<std::string, std::string>> table;
    for (const Preset& p : kPresets) table.emplace_back(p.name, p.description);
    return table;
}

std::string preset_config(const std::string& name) {
    for (const Preset& p : kPresets) {
        if (name == p.name) return p.config;
    }
    throw ConfigError("unknown preset \"" + name + "\" (see the presets listing)");
}

}  // namespace phasewave
