#include "bolab/diagnostics.hpp"

#include "bolab/errors.hpp"
#include "bolab/integrator.hpp"
#include "bolab/spectral_params.hpp"
#include "bolab/vector_field.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace bolab {

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& f, size_t i0,
                 size_t i1) {
    double acc = 0.0;
    for (size_t i = i0; i + 1 <= i1; ++i)
        acc += 0.5 * (f[i] + f[i + 1]) * (t[i + 1] - t[i]);
    return acc;
}

} // namespace

std::vector<double> lyapunov_residual(const Trajectory& traj, double alpha) {
    if (traj.samples() < 2) throw InvalidInputError("need at least two samples");
    const auto& l2 = traj.channel("l2_norm_sq");
    const auto& m1 = traj.channel("mode1_sq");
    std::vector<double> res(traj.samples() - 1);
    for (int i = 0; i + 1 < traj.samples(); ++i) {
        const double dt = traj.times[i + 1] - traj.times[i];
        res[i] = (l2[i + 1] - l2[i]) + 2.0 * alpha * 0.5 * (m1[i] + m1[i + 1]) * dt;
    }
    return res;
}

GapProductIntegral gap_product_integral(const Trajectory& traj) {
    if (traj.samples() < 2) throw InvalidInputError("need at least two samples");
    const auto& gp = traj.channel("gap_product");
    GapProductIntegral out;
    out.total = trapezoid(traj.times, gp, 0, traj.samples() - 1);
    const double t_tail = traj.times.front() + 0.8 * (traj.times.back() - traj.times.front());
    size_t i_tail = 0;
    while (i_tail + 1 < traj.times.size() && traj.times[i_tail] < t_tail) ++i_tail;
    const double tail = trapezoid(traj.times, gp, i_tail, traj.samples() - 1);
    out.tail_fraction = out.total > 0.0 ? tail / out.total : 0.0;
    return out;
}

LaSalleResult lasalle_check(const BirkhoffState& state, double eps) {
    if (!(eps > 0.0)) throw InvalidInputError("eps must be positive");
    LaSalleResult res;
    for (int n = 0; n < state.truncation(); ++n) {
        const double prod = std::abs(state.zeta_at(n)) * std::abs(state.zeta_at(n + 1));
        if (prod > res.max_product) {
            res.max_product = prod;
            res.witness = n;
        }
    }
    res.holds = res.max_product <= eps;
    return res;
}

double generating_function(std::span<const double> lambda, std::span<const double> kappa,
                           std::span<const double> gamma, double mu) {
    if (mu <= -lambda[0])
        throw InvalidInputError("mu must exceed -lambda_0 (pole of the resolvent)");
    double acc = kappa[0] / (lambda[0] + mu); // gamma_0 = 1
    for (size_t n = 1; n < lambda.size() && n - 1 < gamma.size(); ++n)
        acc += kappa[n] * gamma[n - 1] / (lambda[n] + mu);
    return acc;
}

double generating_function(const LaxSpectrum& spec, double mu) {
    return generating_function(spec.lambda, spec.kappa, spec.gamma, mu);
}

double generating_function(const Actions& gamma, double mu) {
    const SpectralParams p = SpectralParams::from_actions(gamma);
    return generating_function(p.lambda, p.kappa, gamma.raw(), mu);
}

namespace {

void check_ps_exponent(double s) {
    if (s < 0.0 || s >= 1.5)
        throw InvalidInputError("P_s exponent must lie in [0, 3/2)");
}

} // namespace

double ps_functional(const BirkhoffState& state, double s) {
    check_ps_exponent(s);
    const int n_max = state.truncation();
    double w = 0.0, acc = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        // w_n = sum_{k=1}^{n-1} k^{2s}, built incrementally
        if (n >= 2) w += std::pow(static_cast<double>(n - 1), 2.0 * s);
        acc += w * std::norm(state.zeta[n - 1]);
    }
    return acc;
}

double ps_derivative(const BirkhoffState& state, double s, double alpha) {
    check_ps_exponent(s);
    const int n_max = state.truncation();
    const SpectralParams params = SpectralParams::from_actions(state.actions());
    // c_n = n^{2s}, c_0 = 0; a_n pairs live on 0..N-1
    std::vector<double> c(n_max, 0.0);
    for (int n = 1; n < n_max; ++n) c[n] = std::pow(static_cast<double>(n), 2.0 * s);
    std::vector<complex> pair(n_max); // conj(zeta_n) zeta_{n+1}
    std::vector<double> g(n_max + 1);
    for (int n = 0; n < n_max; ++n) {
        pair[n] = std::conj(state.zeta_at(n)) * state.zeta_at(n + 1);
        g[n] = (n == 0) ? 1.0 : std::norm(state.zeta[n - 1]);
    }
    g[n_max] = std::norm(state.zeta[n_max - 1]);

    double diag = 0.0;
    for (int n = 0; n < n_max; ++n)
        diag += c[n] * params.a_star[n] * params.a_star[n] * g[n] * g[n + 1];

    double off = 0.0; // sum_{n != p} (c_n + c_p) a_n a_p Re(eta_{n,p})
    for (int n = 0; n < n_max; ++n) {
        if (pair[n] == complex(0.0, 0.0)) continue;
        for (int p = 0; p < n_max; ++p) {
            if (p == n || pair[p] == complex(0.0, 0.0)) continue;
            const complex eta = pair[n] * std::conj(pair[p]);
            off += (c[n] + c[p]) * params.a_star[n] * params.a_star[p] * eta.real();
        }
    }
    return -alpha * diag - 0.5 * alpha * off;
}

std::vector<double> ps_derivative_residual(const Trajectory& traj, double s, double alpha) {
    if (traj.samples() < 2) throw InvalidInputError("need at least two samples");
    std::vector<double> ps(traj.samples()), rhs(traj.samples());
    for (int i = 0; i < traj.samples(); ++i) {
        const BirkhoffState st = traj.state_at(i);
        ps[i] = ps_functional(st, s);
        rhs[i] = ps_derivative(st, s, alpha);
    }
    std::vector<double> res(traj.samples() - 1);
    for (int i = 0; i + 1 < traj.samples(); ++i) {
        const double dt = traj.times[i + 1] - traj.times[i];
        res[i] = (ps[i + 1] - ps[i]) - 0.5 * (rhs[i] + rhs[i + 1]) * dt;
    }
    return res;
}

LimitingActions limiting_actions(const Trajectory& traj, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw InvalidInputError("window fraction must lie in (0, 1]");
    const int first =
        std::max(0, traj.samples() - std::max(10, int(window_fraction * traj.samples())));
    if (traj.samples() - first < 10)
        throw InvalidInputError("trajectory too short for a limiting-action window");

    const size_t width = traj.states.empty() ? 0 : traj.states[0].size();
    LimitingActions out;
    out.mean.assign(width, 0.0);
    out.spread.assign(width, 0.0);
    std::vector<double> lo(width, 1e300), hi(width, -1e300);
    for (int i = first; i < traj.samples(); ++i) {
        for (size_t n = 0; n < width; ++n) {
            const double g = std::norm(traj.states[i][n]);
            out.mean[n] += g;
            lo[n] = std::min(lo[n], g);
            hi[n] = std::max(hi[n], g);
        }
    }
    for (size_t n = 0; n < width; ++n) {
        out.mean[n] /= traj.samples() - first;
        out.spread[n] = hi[n] - lo[n];
    }
    return out;
}

bool DiagnosticReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string DiagnosticReport::to_json() const {
    nlohmann::json j;
    j["provenance"] = provenance;
    auto& arr = j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"value", c.value},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass},
                       {"note", c.note}});
    for (const auto& [name, data] : series) j["series"][name] = data;
    j["all_pass"] = all_pass();
    return j.dump(2);
}

std::string DiagnosticReport::summary_table() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  value=" << c.value
            << "  tol=" << c.tolerance;
        if (!c.note.empty()) out << "  (" << c.note << ")";
        out << "\n";
    }
    return out.str();
}

DiagnosticReport diagnose_trajectory(const Trajectory& traj, const RunConfig& config) {
    // PDE trajectories are compared in Birkhoff coordinates throughout
    Trajectory bt;
    const Trajectory* t = &traj;
    if (traj.kind == Trajectory::Kind::fourier) {
        bt.kind = Trajectory::Kind::birkhoff;
        bt.meta = config;
        bt.times = traj.times;
        bt.channel_names = diagnostic_channel_names(config);
        bt.channel_data.assign(bt.channel_names.size(), {});
        for (int i = 0; i < traj.samples(); ++i) {
            FourierFunction u(config.grid_m);
            for (size_t n = 0; n < traj.states[i].size(); ++n)
                u.set_coeff(static_cast<int>(n) + 1, traj.states[i][n]);
            ForwardResult fw =
                birkhoff_forward(u, config.n_modes, config.effective_lax_cut());
            BirkhoffState st(traj.times[i], fw.state.zeta);
            bt.states.push_back(st.zeta);
            const auto vals = diagnostic_channel_values(st, config);
            for (size_t c = 0; c < vals.size(); ++c) bt.channel_data[c].push_back(vals[c]);
        }
        t = &bt;
    }

    DiagnosticReport rep;
    rep.provenance = "trajectory with " + std::to_string(t->samples()) + " samples, config " +
                     config_hash(config);

    const double tol = config.tol;
    const auto& l2 = t->channel("l2_norm_sq");

    if (config.alpha == 0.0) {
        // isospectral flow: actions conserved
        double drift = 0.0;
        const BirkhoffState s0 = t->state_at(0);
        for (int i = 1; i < t->samples(); ++i) {
            const BirkhoffState si = t->state_at(i);
            for (int n = 1; n <= si.truncation(); ++n)
                drift = std::max(drift, std::abs(std::norm(si.zeta[n - 1]) -
                                                 std::norm(s0.zeta[n - 1])));
        }
        rep.checks.push_back({"actions conserved", drift, 10.0 * tol, drift <= 10.0 * tol,
                              "max |gamma_n(t) - gamma_n(0)|"});
    } else {
        double worst = 0.0;
        for (const double r : lyapunov_residual(*t, config.alpha))
            worst = std::max(worst, std::abs(r));
        rep.checks.push_back({"lyapunov residual", worst, 100.0 * tol, worst <= 100.0 * tol,
                              "per-interval |Delta l2 + 2 alpha trapezoid(mode1_sq)|"});

        double rise = 0.0;
        for (int i = 0; i + 1 < t->samples(); ++i)
            rise = std::max(rise, l2[i + 1] - l2[i]);
        rep.checks.push_back({"l2 monotone nonincreasing", rise, 10.0 * tol,
                              rise <= 10.0 * tol, "max per-interval increase"});

        for (double s : config.ps_exponents) {
            double worst_ps = 0.0;
            for (const double r : ps_derivative_residual(*t, s, config.alpha))
                worst_ps = std::max(worst_ps, std::abs(r));
            std::ostringstream name;
            name << "ps_" << s << " derivative identity";
            rep.checks.push_back({name.str(), worst_ps, 100.0 * tol,
                                  worst_ps <= 100.0 * tol, "per-interval residual"});
        }
    }

    const GapProductIntegral gpi = gap_product_integral(*t);
    rep.series.emplace_back("gap_product_integral",
                            std::vector<double>{gpi.total, gpi.tail_fraction});

    const LaSalleResult ls = lasalle_check(t->state_at(t->samples() - 1), 1e-3);
    rep.series.emplace_back(
        "lasalle_final",
        std::vector<double>{ls.holds ? 1.0 : 0.0, double(ls.witness), ls.max_product});

    if (t->samples() >= 10) {
        const LimitingActions la = limiting_actions(*t, 0.2);
        rep.series.emplace_back("limiting_actions_mean", la.mean);
        rep.series.emplace_back("limiting_actions_spread", la.spread);
    }
    return rep;
}

} // namespace bolab
