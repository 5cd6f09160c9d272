#pragma once

#include <array>
#include <complex>

namespace phasewave {

// Two classical binary beam degrees of freedom: a polarization mode (H/V)
// and a path mode (a/b).  Amplitudes are stored in the product basis
//   c[0] = (H,a), c[1] = (H,b), c[2] = (V,a), c[3] = (V,b),
// i.e. c[2*pol + path] with pol in {H=0, V=1} and path in {a=0, b=1}.
struct BeamState {
    std::array<std::complex<double>, 4> c{};

    std::complex<double> at(int pol, int path) const { return c[2 * pol + path]; }
};

// (H,a) + (V,b) weighted equally; the maximally entangled reference state.
BeamState bell_state();

// Product of two single-mode states at the given basis angles.
BeamState product_state(double theta_pol, double theta_path);

// Two-term diagonal state with prescribed concurrence in [0, 1].
BeamState schmidt_state(double concurrence);

// Normalizes an arbitrary amplitude vector.  Throws DegenerateStateError on
// (near-)zero input.
BeamState make_beam_state(const std::array<std::complex<double>, 4>& amplitudes);

struct SchmidtResult {
    double lambda1 = 0.0;  // larger Schmidt coefficient
    double lambda2 = 0.0;
    double concurrence = 0.0;  // 2 * lambda1 * lambda2
    // Schmidt modes, index 0 paired with lambda1.
    std::array<std::complex<double>, 2> pol_mode1{}, pol_mode2{};
    std::array<std::complex<double>, 2> path_mode1{}, path_mode2{};
};

SchmidtResult schmidt_decompose(const BeamState& state);

// Joint two-outcome correlation E(theta_pol, theta_path).  Each mode is
// measured in its rotated basis {+theta, -theta} with
//   |+theta> = cos(theta)|0> + sin(theta)|1>,
//   |-theta> = -sin(theta)|0> + cos(theta)|1>,
// and outcomes valued +1 / -1.
double correlation(const BeamState& state, double theta_pol, double theta_path);

// CHSH combination S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
// Throws NumericDomainError if |S| exceeds 2*sqrt(2) beyond roundoff, since
// no state of this form may pass that bound.
double chsh(const BeamState& state, double a, double a_prime, double b, double b_prime);

// Largest CHSH value over a separable n x n x n x n angle grid,
// theta = pi*k/n for k = 0..n-1 on each of the four analyzer angles.
struct ChshScanResult {
    double s_max = 0.0;
    double a = 0.0, a_prime = 0.0, b = 0.0, b_prime = 0.0;
};

ChshScanResult chsh_max_scan(const BeamState& state, int grid_n);

// Closed-form optimum 2*sqrt(1 + C^2) for a state of concurrence C.
double chsh_max_closed_form(double concurrence);

// State-independent parity witness on the 3x3 observable square
//   rows:    {Z(x)I, I(x)Z, Z(x)Z}, {I(x)X, X(x)I, X(x)X}, {Z(x)X, X(x)Z, Y(x)Y}
// evaluated on the given state.  Row products and the first two column
// products equal +1, the third column product equals -1, so the witness
//   sum(rows) + col1 + col2 - col3
// evaluates to 6, while the best consistent one-shot +/-1 table reaches
// only noncontextual_bound = 4 (found here by exhaustive search).
struct MerminPeresResult {
    double witness = 0.0;
    double noncontextual_bound = 0.0;
    std::array<double, 3> row_values{};
    std::array<double, 3> col_values{};
};

MerminPeresResult mermin_peres_witness(const BeamState& state);

}  // namespace phasewave
