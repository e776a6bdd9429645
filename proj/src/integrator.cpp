#include "bolab/integrator.hpp"

#include "bolab/diagnostics.hpp"
#include "bolab/errors.hpp"
#include "bolab/spectral_params.hpp"
#include "bolab/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bolab {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

using Vec = std::vector<complex>;

Vec axpy(const Vec& y, double dt, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out = y;
    for (const auto& [coef, k] : terms)
        for (size_t i = 0; i < out.size(); ++i) out[i] += dt * coef * (*k)[i];
    return out;
}

void check_finite(const Vec& v, double t) {
    for (const complex& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            std::ostringstream msg;
            msg << "state became non-finite at t=" << t;
            throw DivergenceError(msg.str());
        }
}

struct DpStep {
    Vec z5;      // 5th-order solution
    Vec f_end;   // F(t+dt, z5), reusable as the next step's first stage
    double error;
};

DpStep dp_step(double t, const Vec& z, const Vec& f1, double dt, double alpha) {
    auto F = [&](double tt, const Vec& zz) { return vector_field_gauge(tt, zz, alpha); };
    const Vec k2 = F(t + c2 * dt, axpy(z, dt, {{a21, &f1}}));
    const Vec k3 = F(t + c3 * dt, axpy(z, dt, {{a31, &f1}, {a32, &k2}}));
    const Vec k4 = F(t + c4 * dt, axpy(z, dt, {{a41, &f1}, {a42, &k2}, {a43, &k3}}));
    const Vec k5 =
        F(t + c5 * dt, axpy(z, dt, {{a51, &f1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec k6 = F(t + dt, axpy(z, dt, {{a61, &f1}, {a62, &k2}, {a63, &k3}, {a64, &k4},
                                          {a65, &k5}}));
    DpStep out;
    out.z5 = axpy(z, dt, {{b1, &f1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    out.f_end = F(t + dt, out.z5); // FSAL stage
    Vec err(z.size(), complex(0.0, 0.0));
    for (size_t i = 0; i < z.size(); ++i)
        err[i] = dt * (e1 * f1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                       e7 * out.f_end[i]);
    out.error = std::sqrt(h_half_norm_sq(err));
    return out;
}

Vec hermite(const Vec& z0, const Vec& f0, const Vec& z1, const Vec& f1, double dt,
            double theta) {
    const double h00 = (1.0 + 2.0 * theta) * (1.0 - theta) * (1.0 - theta);
    const double h10 = theta * (1.0 - theta) * (1.0 - theta);
    const double h01 = theta * theta * (3.0 - 2.0 * theta);
    const double h11 = theta * theta * (theta - 1.0);
    Vec out(z0.size());
    for (size_t i = 0; i < z0.size(); ++i)
        out[i] = h00 * z0[i] + h01 * z1[i] + dt * (h10 * f0[i] + h11 * f1[i]);
    return out;
}

BirkhoffState gauge_to_state(double t, const Vec& z) {
    Vec zeta(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        zeta[i] = std::polar(1.0, n * n * t) * z[i];
    }
    return BirkhoffState(t, std::move(zeta));
}

} // namespace

StepResult rk_step(double t, std::span<const complex> z, double dt, double alpha) {
    Vec z0(z.begin(), z.end());
    const Vec f1 = vector_field_gauge(t, z0, alpha);
    DpStep s = dp_step(t, z0, f1, dt, alpha);
    check_finite(s.z5, t + dt);
    return {std::move(s.z5), s.error};
}

std::vector<std::string> diagnostic_channel_names(const RunConfig& config) {
    std::vector<std::string> names = {"l2_norm_sq", "mode1_sq", "gap_product"};
    for (double s : config.ps_exponents) {
        std::ostringstream n;
        n << "ps_" << s;
        names.push_back(n.str());
    }
    return names;
}

std::vector<double> diagnostic_channel_values(const BirkhoffState& state,
                                              const RunConfig& config) {
    const Actions gamma = state.actions();
    const SpectralParams params = SpectralParams::from_actions(gamma);
    std::vector<double> vals;
    vals.push_back(2.0 * sobolev_norm_sq(gamma, 0.0));
    vals.push_back(std::norm(mode_one_projection(state, params)));
    double gap = 0.0;
    for (int n = 0; n < state.truncation(); ++n) gap += gamma.at(n) * gamma.at(n + 1);
    vals.push_back(gap);
    for (double s : config.ps_exponents) vals.push_back(ps_functional(state, s));
    return vals;
}

Trajectory evolve(const BirkhoffState& initial, const RunConfig& config) {
    if (sobolev_norm_sq(initial, 0.0) > 100.0)
        throw InvalidInputError("initial state outside the sanity ball ||zeta||_{h1/2} <= 10");

    const double t_end = config.t_end;
    const double dt_sample = config.sample_dt;

    Trajectory traj;
    traj.kind = Trajectory::Kind::birkhoff;
    traj.meta = config;
    traj.channel_names = diagnostic_channel_names(config);
    traj.channel_data.assign(traj.channel_names.size(), {});

    auto record = [&](const BirkhoffState& s) {
        traj.times.push_back(s.t);
        traj.states.push_back(s.zeta);
        const auto vals = diagnostic_channel_values(s, config);
        for (size_t i = 0; i < vals.size(); ++i) traj.channel_data[i].push_back(vals[i]);
    };

    record(BirkhoffState(0.0, initial.zeta));

    Vec z = initial.zeta;
    double t = 0.0;
    Vec f = vector_field_gauge(t, z, config.alpha);
    double dt = std::min(dt_sample, 1e-2);
    int next_sample = 1;

    const int total_samples = static_cast<int>(std::floor(t_end / dt_sample + 1e-9));

    while (t < t_end - 1e-12 * std::max(1.0, t_end)) {
        dt = std::min({dt, dt_sample, t_end - t});
        if (dt < 1e-12)
            throw StiffnessError("step size underflow at t=" + std::to_string(t));

        DpStep s = dp_step(t, z, f, dt, config.alpha);
        check_finite(s.z5, t + dt);

        if (s.error <= config.tol) {
            // accepted; emit any sample times inside (t, t+dt] (the slack
            // absorbs roundoff accumulated in t over long runs)
            while (next_sample <= total_samples) {
                const double ts = next_sample * dt_sample;
                if (ts > t + dt + 1e-9 * std::max(1.0, ts)) break;
                const double theta = std::clamp((ts - t) / dt, 0.0, 1.0);
                record(gauge_to_state(ts, hermite(z, f, s.z5, s.f_end, dt, theta)));
                ++next_sample;
            }
            t += dt;
            z = std::move(s.z5);
            f = std::move(s.f_end);
        }

        const double grow =
            s.error > 0.0 ? 0.9 * std::pow(config.tol / s.error, 0.2) : 5.0;
        dt *= std::clamp(grow, 0.2, 5.0);
    }

    return traj;
}

} // namespace bolab
