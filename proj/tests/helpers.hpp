#pragma once

#include "bolab/birkhoff_map.hpp"
#include "bolab/fourier.hpp"
#include "bolab/state.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace bolab::testing {

/// Smooth random potential: uhat(n) = amplitude * decay^{n-1} e^{i phi_n}
/// for n = 1..modes, conjugate-symmetric, zero mean.
inline FourierFunction random_potential(int grid_m, int modes, double amplitude,
                                        double decay, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    FourierFunction u(grid_m);
    double amp = amplitude;
    for (int n = 1; n <= modes; ++n) {
        u.set_coeff(n, std::polar(amp, phase(rng)));
        amp *= decay;
    }
    return u;
}

inline Actions random_actions(int n_max, double total, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> g(n_max);
    double sum = 0.0;
    for (double& x : g) {
        x = unit(rng);
        sum += x;
    }
    for (double& x : g) x *= total / sum;
    return Actions(std::move(g));
}

inline BirkhoffState random_state(int n_max, double total_action, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    const Actions g = random_actions(n_max, total_action, seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<complex> z(n_max);
    for (int n = 1; n <= n_max; ++n) z[n - 1] = std::polar(std::sqrt(g.at(n)), phase(rng));
    return BirkhoffState(0.0, std::move(z));
}

/// (1/2pi) int_0^{2pi} f(x) e^{-inx} dx by a fine rectangle rule
/// (spectrally accurate for smooth periodic integrands).
inline complex quadrature_mode(const std::function<double(double)>& f, int n,
                               int points = 1 << 14) {
    complex acc(0.0, 0.0);
    for (int j = 0; j < points; ++j) {
        const double x = 2.0 * M_PI * j / points;
        acc += f(x) * std::polar(1.0, -n * x);
    }
    return acc / static_cast<double>(points);
}

/// u + eps*h for h = cos (k=1) or sin, as coefficient perturbations.
inline FourierFunction perturb(const FourierFunction& u, double eps, bool is_sin) {
    FourierFunction v = u;
    // cos: uhat(1) += eps/2;  sin: uhat(1) += eps/(2i) = -i eps/2
    const complex d = is_sin ? complex(0.0, -0.5 * eps) : complex(0.5 * eps, 0.0);
    v.set_coeff(1, v.coeff(1) + d);
    return v;
}

/// Central finite difference of the Birkhoff coordinates through the direct
/// map: (zeta_n(u + eps h) - zeta_n(u - eps h)) / (2 eps).
inline std::vector<complex> fd_dzeta(const FourierFunction& u, bool is_sin, double eps,
                                     int n_modes, int m_cut) {
    const ForwardResult plus = birkhoff_forward(perturb(u, eps, is_sin), n_modes, m_cut);
    const ForwardResult minus = birkhoff_forward(perturb(u, -eps, is_sin), n_modes, m_cut);
    std::vector<complex> out(n_modes);
    for (int n = 0; n < n_modes; ++n)
        out[n] = (plus.state.zeta[n] - minus.state.zeta[n]) / (2.0 * eps);
    return out;
}

} // namespace bolab::testing
