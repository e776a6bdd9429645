#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bolab/spectral_params.hpp"

#include "helpers.hpp"

#include <cmath>

using namespace bolab;

namespace {

// independent direct evaluation of the product definitions, always in plain
// double multiplication (the implementation may switch to log space)
double kappa_direct(const Actions& g, const std::vector<double>& la, int n) {
    double prod = n == 0 ? 1.0 : 1.0 / (la[n] - la[0]);
    for (int p = 1; p <= g.truncation(); ++p) {
        if (p == n) continue;
        prod *= 1.0 - g.at(p) / (la[p] - la[n]);
    }
    return prod;
}

double mu_direct(const Actions& g, const std::vector<double>& la, int n) {
    double prod = 1.0 - g.at(n) / (la[n] - la[0]);
    for (int p = 1; p <= g.truncation(); ++p) {
        if (p == n) continue;
        prod *= (1.0 - g.at(p) / (la[p] - la[n])) /
                (1.0 - g.at(p) / (la[p] - la[n - 1] - 1.0));
    }
    return prod;
}

} // namespace

TEST_CASE("lambda for zero actions is the integer ladder") {
    const Actions g(std::vector<double>(6, 0.0));
    const auto la = lambda_from_gamma(g);
    for (int n = 0; n <= 6; ++n) CHECK(la[n] == doctest::Approx(n));
}

TEST_CASE("lambda with a single gap") {
    const Actions g({0.5, 0.0, 0.0});
    const auto la = lambda_from_gamma(g);
    CHECK(la[0] == doctest::Approx(-0.5));
    CHECK(la[1] == doctest::Approx(1.0));
    CHECK(la[2] == doctest::Approx(2.0));
}

TEST_CASE("lambda spacing identity is exact") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const Actions g = testing::random_actions(40, 1.3, seed);
        const auto la = lambda_from_gamma(g);
        for (int n = 0; n < 40; ++n)
            CHECK(std::abs(la[n + 1] - la[n] - 1.0 - g.at(n + 1)) < 1e-14);
    }
}

TEST_CASE("kappa trivial and hand-evaluated cases") {
    {
        const Actions g(std::vector<double>(5, 0.0));
        const auto k = kappa_from_gamma(g);
        CHECK(k[0] == doctest::Approx(1.0));
        for (int n = 1; n <= 5; ++n) CHECK(k[n] == doctest::Approx(1.0 / n));
    }
    {
        const Actions g({0.5, 0.0, 0.0});
        const auto k = kappa_from_gamma(g);
        CHECK(k[0] == doctest::Approx(2.0 / 3.0));
        CHECK(k[1] == doctest::Approx(2.0 / 3.0));
        CHECK(k[2] == doctest::Approx(0.6));
    }
}

TEST_CASE("kappa and mu match the direct-evaluation oracle") {
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        const Actions g = testing::random_actions(30, 0.8, seed);
        const auto la = lambda_from_gamma(g);
        const auto k = kappa_from_gamma(g);
        const auto m = mu_from_gamma(g);
        for (int n = 0; n <= 30; ++n)
            CHECK(k[n] == doctest::Approx(kappa_direct(g, la, n)).epsilon(1e-12));
        for (int n = 1; n <= 30; ++n)
            CHECK(m[n] == doctest::Approx(mu_direct(g, la, n)).epsilon(1e-12));
    }
}

TEST_CASE("log-space evaluation agrees with direct products beyond the switch") {
    const Actions g = testing::random_actions(300, 1.0, 99);
    const auto la = lambda_from_gamma(g);
    const auto k = kappa_from_gamma(g); // log-space path (N > 256)
    for (int n : {0, 1, 7, 150, 299})
        CHECK(k[n] == doctest::Approx(kappa_direct(g, la, n)).epsilon(1e-11));
}

TEST_CASE("mu trivial and single-gap cases") {
    {
        const Actions g(std::vector<double>(5, 0.0));
        const auto m = mu_from_gamma(g);
        for (int n = 1; n <= 5; ++n) CHECK(m[n] == doctest::Approx(1.0));
    }
    const double gap = 0.5;
    const Actions g({gap, 0.0, 0.0});
    const auto m = mu_from_gamma(g);
    CHECK(m[1] == doctest::Approx(1.0 / (1.0 + gap)));
    CHECK(m[2] == doctest::Approx(1.0)); // the p=1 ratio cancels exactly
}

TEST_CASE("a_star trivial and single-gap cases") {
    {
        const SpectralParams p = SpectralParams::from_actions(Actions(std::vector<double>(6, 0.0)));
        CHECK(p.a_star[0] == doctest::Approx(1.0));
        for (int n = 1; n < 6; ++n)
            CHECK(p.a_star[n] == doctest::Approx(std::sqrt((n + 1.0) / n)));
    }
    const double gap = 0.5;
    const SpectralParams p = SpectralParams::from_actions(Actions({gap, 0.0, 0.0}));
    CHECK(p.a_star[0] == doctest::Approx(std::sqrt(1.0 / (1.0 + gap))));
}

TEST_CASE("two-sided bounds hold with empirically calibrated constants") {
    // C(R) pinned from a 1000-sequence calibration sweep at each R; note
    // (n+1) kappa_n ~ (n+1)/n touches 2 at n = 1 even for vanishing actions
    const struct { double total; double c; } cases[] = {{0.1, 2.5}, {1.0, 6.0}, {5.0, 60.0}};
    for (const auto& [total, c_bound] : cases) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const Actions g = testing::random_actions(24, total, seed * 7919 + 1);
            const SpectralParams p = SpectralParams::from_actions(g);
            for (int n = 0; n <= 24; ++n) {
                const double scaled = (n + 1) * p.kappa[n];
                CHECK(scaled < c_bound);
                CHECK(scaled > 1.0 / c_bound);
                if (n >= 1) {
                    CHECK(p.mu[n] < c_bound);
                    CHECK(p.mu[n] > 1.0 / c_bound);
                }
                if (n < 24) {
                    CHECK(p.a_star[n] < c_bound);
                    CHECK(p.a_star[n] > 1.0 / c_bound);
                }
            }
        }
    }
}

TEST_CASE("differentials of ln kappa and ln mu match finite differences") {
    // analytic route: d ln kappa_n = -(dlam_n - dlam_0)/(lam_n - lam_0)
    //   + sum_{p != n} r_p(n) (gamma_p (dlam_p - dlam_n)/(lam_p - lam_n)^2 - dgam_p/(lam_p - lam_n))
    // with dlam_n/dgam_k = -1_{k > n}
    const Actions g = testing::random_actions(12, 0.6, 5);
    const auto la = lambda_from_gamma(g);

    auto dlam = [&](int n, int k) { return k > n ? -1.0 : 0.0; };
    auto dln_kappa = [&](int n, int k) {
        double acc = n == 0 ? 0.0 : -(dlam(n, k) - dlam(0, k)) / (la[n] - la[0]);
        for (int p = 1; p <= 12; ++p) {
            if (p == n) continue;
            const double d = la[p] - la[n];
            const double r = 1.0 / (1.0 - g.at(p) / d);
            const double dgam = (p == k) ? 1.0 : 0.0;
            acc += r * (g.at(p) * (dlam(p, k) - dlam(n, k)) / (d * d) - dgam / d);
        }
        return acc;
    };

    const double eps = 1e-6;
    for (int k = 1; k <= 12; ++k) {
        std::vector<double> up(g.raw().begin(), g.raw().end());
        std::vector<double> dn(g.raw().begin(), g.raw().end());
        up[k - 1] += eps;
        dn[k - 1] -= eps;
        const auto k_up = kappa_from_gamma(Actions(up));
        const auto k_dn = kappa_from_gamma(Actions(dn));
        for (int n = 0; n <= 12; ++n) {
            const double fd = (std::log(k_up[n]) - std::log(k_dn[n])) / (2.0 * eps);
            CHECK(fd == doctest::Approx(dln_kappa(n, k)).epsilon(1e-6));
        }
    }
}

TEST_CASE("m_entry cases") {
    const BirkhoffState zero(0.0, std::vector<complex>(6, complex(0.0, 0.0)));
    const SpectralParams pz = SpectralParams::from_actions(zero.actions());
    for (int n = 0; n < 6; ++n)
        for (int p = 0; p <= 6; ++p) {
            const complex v = m_entry(n, p, zero, pz);
            if (p == n + 1)
                CHECK(std::abs(v - complex(1.0, 0.0)) < 1e-14); // mu = 1 at zero actions
            else
                CHECK(std::abs(v) == 0.0);
        }

    const BirkhoffState st = testing::random_state(8, 0.5, 17);
    const SpectralParams p = SpectralParams::from_actions(st.actions());
    for (int n = 0; n < 8; ++n) {
        CHECK(std::abs(m_entry(n, n + 1, st, p) - complex(std::sqrt(p.mu[n + 1]), 0.0)) <
              1e-14);
        // diagonal m_n = -a_n conj(zeta_n) zeta_{n+1}
        const complex expect = -p.a_star[n] * std::conj(st.zeta_at(n)) * st.zeta_at(n + 1);
        CHECK(std::abs(m_entry(n, n, st, p) - expect) < 1e-13);
    }
}

TEST_CASE("conditioning indicator tracks the smallest product factor") {
    const SpectralParams clean =
        SpectralParams::from_actions(Actions(std::vector<double>(4, 0.0)));
    CHECK(clean.min_factor == doctest::Approx(1.0));

    // a huge single action keeps every factor positive but squeezes the
    // n = 0 one down to 1 - 5/6
    const SpectralParams tight = SpectralParams::from_actions(Actions({5.0}));
    CHECK(tight.min_factor > 0.0);
    CHECK(tight.min_factor == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}
