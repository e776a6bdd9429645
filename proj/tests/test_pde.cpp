#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bolab/errors.hpp"
#include "bolab/pde.hpp"

#include "helpers.hpp"

#include <cmath>

using namespace bolab;

namespace {

RunConfig pde_config(double alpha, double t_end, int m = 256) {
    RunConfig c;
    c.alpha = alpha;
    c.grid_m = m;
    c.n_modes = 16;
    c.t_end = t_end;
    c.sample_dt = 0.05;
    c.initial_data.type = InitialData::Type::one_gap;
    c.initial_data.r = 0.5;
    return c;
}

} // namespace

TEST_CASE("rhs of the zero potential is zero") {
    const auto rhs = pde_rhs(FourierFunction(128), 0.5);
    CHECK(l2_norm_sq(rhs) == 0.0);
}

TEST_CASE("rhs of 2cos x: dispersive phase plus the quadratic cascade") {
    FourierFunction u(128);
    u.set_coeff(1, complex(1.0, 0.0)); // u = 2 cos x

    const auto rhs0 = pde_rhs(u, 0.0);
    // (2cos x)^2 = 2 + 2cos 2x: mode 1 sees only the linear i n^2 term,
    // mode 2 picks up -i n (u^2)^(2) = -2i
    CHECK(std::abs(rhs0.coeff(1) - complex(0.0, 1.0)) < 1e-13);
    CHECK(std::abs(rhs0.coeff(2) - complex(0.0, -2.0)) < 1e-13);

    const double alpha = 0.8;
    const auto rhs_damped = pde_rhs(u, alpha);
    CHECK(std::abs(rhs_damped.coeff(1) - (rhs0.coeff(1) - 0.5 * alpha * u.coeff(1))) < 1e-13);
    for (int n = 2; n <= 8; ++n)
        CHECK(std::abs(rhs_damped.coeff(n) - rhs0.coeff(n)) < 1e-14);

    CHECK(rhs_damped.is_real());
    CHECK(rhs_damped.mean() == 0.0);
}

TEST_CASE("damping touches only the first modes") {
    // uhat(1) = 0: the rhs must not depend on alpha at all
    FourierFunction u(128);
    u.set_coeff(2, complex(0.3, 0.1));
    u.set_coeff(3, complex(-0.05, 0.2));
    const auto a = pde_rhs(u, 0.0);
    const auto b = pde_rhs(u, 1.7);
    for (int n = 1; n <= 64; ++n) CHECK(a.coeff(n) == b.coeff(n));
}

TEST_CASE("undamped evolution conserves the l2 norm") {
    const RunConfig c = pde_config(0.0, 5.0);
    const auto u0 = one_gap_potential(0.5, 256);
    const Trajectory traj = pde_evolve(u0, c);
    const auto& l2 = traj.channel("l2_norm_sq");
    for (double v : l2) CHECK(std::abs(v - l2[0]) < 1e-8);
    CHECK(l2[0] == doctest::Approx(l2_norm_sq(u0)).epsilon(1e-12));
}

TEST_CASE("fixed-step convergence is fourth order") {
    RunConfig c = pde_config(0.3, 0.25);
    c.sample_dt = 0.25; // only the endpoint matters here
    c.initial_data.r = 0.4;
    const auto u0 = one_gap_potential(0.4, 256);

    auto end_state = [&](double dt) {
        RunConfig cc = c;
        cc.pde_dt = dt;
        const Trajectory t = pde_evolve(u0, cc);
        return t.states.back();
    };
    // steps below the CFL default so the requested dt is the one used
    const auto ref = end_state(1.0 / 16384.0);
    auto err = [&](double dt) {
        const auto s = end_state(dt);
        double e = 0.0;
        for (size_t n = 0; n < s.size(); ++n) e = std::max(e, std::abs(s[n] - ref[n]));
        return e;
    };
    const double e1 = err(1.0 / 512.0), e2 = err(1.0 / 1024.0);
    const double order = std::log2(e1 / e2);
    CHECK(order > 3.5);
    CHECK(order < 4.6);
}

TEST_CASE("damped evolution dissipates through mode one") {
    RunConfig c = pde_config(0.5, 2.0);
    c.sample_dt = 0.005;
    const Trajectory traj = pde_evolve(one_gap_potential(0.5, 256), c);
    const auto& l2 = traj.channel("l2_norm_sq");
    const auto& m1 = traj.channel("mode1_sq");
    for (int i = 0; i + 1 < traj.samples(); ++i) {
        CHECK(l2[i + 1] <= l2[i] + 1e-10);
        const double dt = traj.times[i + 1] - traj.times[i];
        const double residual =
            (l2[i + 1] - l2[i]) + 2.0 * c.alpha * 0.5 * (m1[i] + m1[i + 1]) * dt;
        CHECK(std::abs(residual) < 1e-6);
    }
}

TEST_CASE("dealiased band stays empty for smooth data") {
    RunConfig c = pde_config(0.5, 1.0);
    const Trajectory traj = pde_evolve(one_gap_potential(0.5, 256), c);
    const auto& last = traj.states.back();
    double top_energy = 0.0;
    for (size_t n = 2 * last.size() / 3; n < last.size(); ++n)
        top_energy += std::norm(last[n]);
    CHECK(top_energy < 1e-10);
}

TEST_CASE("unresolved initial data is rejected") {
    // r = 0.95 on a tiny grid: coefficients have not decayed by M/3
    CHECK_THROWS_AS(pde_evolve(one_gap_potential(0.95, 64), pde_config(0.0, 1.0, 64)),
                    InvalidInputError);
}

TEST_CASE("cross validation: zero data gives identically zero trajectories") {
    RunConfig c = pde_config(0.5, 0.5);
    c.initial_data.type = InitialData::Type::fourier_coeffs;
    c.initial_data.coeffs = {complex(0.0, 0.0)};
    const CrossValidation cv = cross_validate(FourierFunction(256), c);
    CHECK(cv.max_action_discrepancy == 0.0);
    CHECK(cv.max_zeta_discrepancy == 0.0);
}

TEST_CASE("cross validation: undamped one-gap agreement") {
    RunConfig c = pde_config(0.0, 5.0);
    c.n_modes = 32;
    c.tol = 1e-10;
    const CrossValidation cv = cross_validate(one_gap_potential(0.5, 256), c);
    CHECK(cv.max_action_discrepancy <= 1e-5);
}

TEST_CASE("cross validation: damped short-run agreement") {
    RunConfig c = pde_config(0.5, 1.0);
    c.n_modes = 32;
    c.tol = 1e-10;
    const CrossValidation cv = cross_validate(one_gap_potential(0.5, 256), c);
    CHECK(cv.max_action_discrepancy <= 1e-4);
}
