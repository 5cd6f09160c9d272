#include "phasewave/grid.hpp"

#include "phasewave/errors.hpp"

#include <cmath>

namespace phasewave {

std::vector<double> PhaseSpaceGrid::q_nodes() const {
    std::vector<double> out(static_cast<std::size_t>(n_q));
    for (int i = 0; i < n_q; ++i) out[i] = q_at(i);
    return out;
}

std::vector<double> PhaseSpaceGrid::p_nodes() const {
    std::vector<double> out(static_cast<std::size_t>(n_p));
    for (int j = 0; j < n_p; ++j) out[j] = p_at(j);
    return out;
}

bool PhaseSpaceGrid::same_shape(const PhaseSpaceGrid& other) const {
    return q_min == other.q_min && q_max == other.q_max &&
           p_min == other.p_min && p_max == other.p_max &&
           n_q == other.n_q && n_p == other.n_p &&
           periodic_q == other.periodic_q && periodic_p == other.periodic_p;
}

PhaseSpaceGrid make_grid(double q_min, double q_max, int n_q,
                         double p_min, double p_max, int n_p,
                         bool periodic_q, bool periodic_p) {
    if (!std::isfinite(q_min) || !std::isfinite(q_max))
        throw ConfigError("q bounds must be finite");
    if (!std::isfinite(p_min) || !std::isfinite(p_max))
        throw ConfigError("p bounds must be finite");
    if (q_max <= q_min) throw ConfigError("q bounds inverted");
    if (p_max <= p_min) throw ConfigError("p bounds inverted");
    if (n_q < 4) throw ConfigError("n_q must be at least 4");
    if (n_p < 4) throw ConfigError("n_p must be at least 4");
    PhaseSpaceGrid g;
    g.q_min = q_min;
    g.q_max = q_max;
    g.p_min = p_min;
    g.p_max = p_max;
    g.n_q = n_q;
    g.n_p = n_p;
    g.periodic_q = periodic_q;
    g.periodic_p = periodic_p;
    return g;
}

} // namespace phasewave
