#include "bolab/pde.hpp"

#include "bolab/birkhoff_map.hpp"
#include "bolab/errors.hpp"
#include "bolab/integrator.hpp"

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <mutex>

namespace bolab {

namespace {

// The solver works on the nonnegative half spectrum v[n] = uhat(n),
// n = 0..M/2; the negative modes are implicit by reality.
struct HalfGrid {
    int m = 0;
    fftw_plan r2c = nullptr, c2r = nullptr;
};

HalfGrid& grid_for(int m) {
    static std::mutex mtx;
    static std::map<int, HalfGrid> cache;
    std::scoped_lock lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    HalfGrid g;
    g.m = m;
    std::vector<double> re(m);
    std::vector<fftw_complex> cx(m / 2 + 1);
    g.r2c = fftw_plan_dft_r2c_1d(m, re.data(), cx.data(), FFTW_ESTIMATE);
    g.c2r = fftw_plan_dft_c2r_1d(m, cx.data(), re.data(), FFTW_ESTIMATE);
    return cache.emplace(m, g).first->second;
}

using Half = std::vector<complex>;

Half half_from(const FourierFunction& u) {
    Half v(u.grid_size() / 2 + 1);
    for (int n = 0; n <= u.grid_size() / 2; ++n) v[n] = u.coeff(n);
    v[0] = complex(0.0, 0.0);
    return v;
}

void dealias(Half& v, int m) {
    const int cut = m / 3;
    for (int n = cut + 1; n < static_cast<int>(v.size()); ++n) v[n] = complex(0.0, 0.0);
}

// (u^2)^ on the dealiased band; also reports max|u| for the blow-up guard
Half square(const Half& v, int m, double& max_abs_u) {
    HalfGrid& g = grid_for(m);
    std::vector<fftw_complex> buf(m / 2 + 1);
    Half vd = v;
    dealias(vd, m);
    for (int n = 0; n <= m / 2; ++n) {
        buf[n][0] = vd[n].real();
        buf[n][1] = vd[n].imag();
    }
    std::vector<double> grid(m);
    fftw_execute_dft_c2r(g.c2r, buf.data(), grid.data());
    max_abs_u = 0.0;
    for (double& x : grid) {
        max_abs_u = std::max(max_abs_u, std::abs(x));
        x *= x;
    }
    fftw_execute_dft_r2c(g.r2c, grid.data(), buf.data());
    Half out(m / 2 + 1);
    for (int n = 0; n <= m / 2; ++n)
        out[n] = complex(buf[n][0], buf[n][1]) / static_cast<double>(m);
    dealias(out, m);
    return out;
}

// nonlinear part N(v)(n) = -i n (u^2)^(n)
Half nonlinear(const Half& v, int m, double& max_abs_u) {
    Half sq = square(v, m, max_abs_u);
    Half out(v.size());
    for (int n = 0; n < static_cast<int>(v.size()); ++n)
        out[n] = complex(0.0, -static_cast<double>(n)) * sq[n];
    out[0] = complex(0.0, 0.0);
    return out;
}

} // namespace

FourierFunction pde_rhs(const FourierFunction& u, double alpha) {
    if (!u.is_real(1e-12)) throw InvalidInputError("potential violates the reality invariant");
    const int m = u.grid_size();
    Half v = half_from(u);
    double max_abs = 0.0;
    Half nl = nonlinear(v, m, max_abs);
    FourierFunction out(m);
    for (int n = 1; n <= m / 2; ++n) {
        complex r = complex(0.0, static_cast<double>(n) * n) * v[n] + nl[n];
        if (n == 1) r -= 0.5 * alpha * v[n];
        out.set_coeff(n, r);
    }
    return out;
}

Trajectory pde_evolve(const FourierFunction& u0, const RunConfig& config) {
    const int m = u0.grid_size();
    if (!u0.is_real(1e-12)) throw InvalidInputError("initial data violates reality");

    // smoothness gate: coefficients must have decayed below 1e-12 by the
    // dealiasing edge, otherwise the grid is too small for this data
    for (int n = m / 3; n <= m / 2; ++n)
        if (std::abs(u0.coeff(n)) >= 1e-12)
            throw InvalidInputError(
                "initial data not resolved on this grid: |uhat(" + std::to_string(n) +
                ")| has not decayed below 1e-12 before M/3; increase M");

    Half v = half_from(u0);
    const double alpha = config.alpha;

    // fixed step: CFL-like bound 0.5 / (max|n| max|u|), capped by pde_dt and
    // the sample cadence, then rounded so samples land exactly
    double max_u0 = 1e-12;
    for (double x : samples_from_fourier(u0)) max_u0 = std::max(max_u0, std::abs(x));
    double dt_target = 0.5 / (static_cast<double>(m / 2) * std::max(1.0, max_u0));
    if (config.pde_dt > 0.0) dt_target = std::min(dt_target, config.pde_dt);
    dt_target = std::min(dt_target, config.sample_dt);
    const int steps_per_sample = std::max(1, static_cast<int>(std::ceil(config.sample_dt / dt_target - 1e-12)));
    const double dt = config.sample_dt / steps_per_sample;

    // diagonal symbol L_n = i n^2 - (alpha/2) 1_{n=1} (n >= 0 half spectrum)
    const int half_n = m / 2;
    std::vector<complex> e_full(half_n + 1), e_half(half_n + 1);
    for (int n = 0; n <= half_n; ++n) {
        const complex L(n == 1 ? -0.5 * alpha : 0.0, static_cast<double>(n) * n);
        e_full[n] = std::exp(L * dt);
        e_half[n] = std::exp(L * (0.5 * dt));
    }

    Trajectory traj;
    traj.kind = Trajectory::Kind::fourier;
    traj.meta = config;
    traj.channel_names = {"l2_norm_sq", "mode1_sq"};
    traj.channel_data.assign(2, {});

    auto record = [&](double t, const Half& w) {
        traj.times.push_back(t);
        std::vector<complex> state(w.begin() + 1, w.end());
        double l2 = 0.0;
        for (int n = 1; n <= half_n; ++n) l2 += 2.0 * std::norm(w[n]);
        traj.channel_data[0].push_back(l2);
        traj.channel_data[1].push_back(std::norm(w[1]));
        traj.states.push_back(std::move(state));
    };

    record(0.0, v);

    const int total_samples = static_cast<int>(std::floor(config.t_end / config.sample_dt + 1e-9));
    double max_abs = 0.0;
    for (int s = 1; s <= total_samples; ++s) {
        for (int k = 0; k < steps_per_sample; ++k) {
            // integrating-factor RK4 on w' = e^{-Lt} N(e^{Lt} w)
            Half k1 = nonlinear(v, m, max_abs);
            if (max_abs > 1e6)
                throw DivergenceError("blow-up detected: max|u| > 1e6");
            Half stage(v.size());

            for (size_t i = 0; i < v.size(); ++i)
                stage[i] = e_half[i] * (v[i] + 0.5 * dt * k1[i]);
            Half k2 = nonlinear(stage, m, max_abs);

            for (size_t i = 0; i < v.size(); ++i)
                stage[i] = e_half[i] * v[i] + 0.5 * dt * k2[i];
            Half k3 = nonlinear(stage, m, max_abs);

            for (size_t i = 0; i < v.size(); ++i)
                stage[i] = e_full[i] * v[i] + dt * e_half[i] * k3[i];
            Half k4 = nonlinear(stage, m, max_abs);

            for (size_t i = 0; i < v.size(); ++i)
                v[i] = e_full[i] * v[i] +
                       dt / 6.0 *
                           (e_full[i] * k1[i] + 2.0 * e_half[i] * (k2[i] + k3[i]) + k4[i]);
            v[0] = complex(0.0, 0.0); // mean stays pinned at zero
        }
        record(s * config.sample_dt, v);
    }
    return traj;
}

std::string CrossValidation::to_json() const {
    nlohmann::json j;
    j["max_action_discrepancy"] = max_action_discrepancy;
    j["max_zeta_discrepancy"] = max_zeta_discrepancy;
    j["per_mode_action"] = per_mode_action;
    j["compared_modes"] = compared_modes;
    return j.dump(2);
}

CrossValidation cross_validate(const FourierFunction& u0, const RunConfig& config) {
    const int n_cmp = std::max(1, config.n_modes / 2);
    const int m_cut = config.effective_lax_cut();

    Trajectory pde = pde_evolve(u0, config);

    ForwardResult fw0 = birkhoff_forward(u0, config.n_modes, m_cut);
    Trajectory birk = evolve(fw0.state, config);

    CrossValidation out;
    out.compared_modes = n_cmp;
    out.per_mode_action.assign(n_cmp, 0.0);

    const int samples = std::min(pde.samples(), birk.samples());
    for (int i = 0; i < samples; ++i) {
        FourierFunction u(config.grid_m);
        for (size_t n = 0; n < pde.states[i].size(); ++n)
            u.set_coeff(static_cast<int>(n) + 1, pde.states[i][n]);
        ForwardResult fw = birkhoff_forward(u, n_cmp, m_cut);
        for (int n = 1; n <= n_cmp; ++n) {
            const double gp = std::norm(fw.state.zeta[n - 1]);
            const double gb = std::norm(birk.states[i][n - 1]);
            const double d = std::abs(gp - gb);
            out.per_mode_action[n - 1] = std::max(out.per_mode_action[n - 1], d);
            out.max_action_discrepancy = std::max(out.max_action_discrepancy, d);
            out.max_zeta_discrepancy = std::max(
                out.max_zeta_discrepancy, std::abs(fw.state.zeta[n - 1] - birk.states[i][n - 1]));
        }
    }
    return out;
}

} // namespace bolab
