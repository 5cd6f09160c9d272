#pragma once

#include <cstddef>
#include <vector>

namespace phasewave {

// Uniform rectangular phase-space grid. Nodes sit at
//   q_i = q_min + i*dq, i = 0..n_q-1,   dq = (q_max - q_min)/n_q,
// and likewise for p. The right endpoint is never sampled; on a periodic
// axis the first node is the wrap of the omitted endpoint, so the Riemann
// sum over nodes is the trapezoid rule. On a truncated (non-periodic) axis
// fields are treated as zero outside the sampled hull.
struct PhaseSpaceGrid {
    double q_min = 0.0;
    double q_max = 0.0;
    double p_min = 0.0;
    double p_max = 0.0;
    int n_q = 0;
    int n_p = 0;
    bool periodic_q = false;
    bool periodic_p = false;

    double dq() const { return (q_max - q_min) / n_q; }
    double dp() const { return (p_max - p_min) / n_p; }
    double cell_area() const { return dq() * dp(); }
    std::size_t size() const {
        return static_cast<std::size_t>(n_q) * static_cast<std::size_t>(n_p);
    }

    double q_at(int i) const { return q_min + i * dq(); }
    double p_at(int j) const { return p_min + j * dp(); }

    // Row-major storage: index = i*n_p + j with q varying slowest.
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * n_p + j;
    }

    std::vector<double> q_nodes() const;
    std::vector<double> p_nodes() const;

    bool same_shape(const PhaseSpaceGrid& other) const;
};

// Validated constructor. Throws ConfigError naming the offending field for
// inverted bounds or counts below 4.
PhaseSpaceGrid make_grid(double q_min, double q_max, int n_q,
                         double p_min, double p_max, int n_p,
                         bool periodic_q = false, bool periodic_p = false);

} // namespace phasewave
