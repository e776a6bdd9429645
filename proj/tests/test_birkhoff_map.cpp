#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bolab/birkhoff_map.hpp"
#include "bolab/errors.hpp"
#include "bolab/vector_field.hpp"

#include "helpers.hpp"

#include <nlohmann/json.hpp>

using namespace bolab;

TEST_CASE("lax matrix of the zero potential is the mode ladder") {
    const FourierFunction zero(64);
    const auto a = build_lax_matrix(zero, 8);
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; m <= 8; ++m)
            CHECK(a(n, m) == complex(n == m ? n : 0.0, 0.0));
}

TEST_CASE("lax matrix of 2cos x is tridiagonal with -1 off the diagonal") {
    FourierFunction u(64);
    u.set_coeff(1, complex(1.0, 0.0));
    const auto a = build_lax_matrix(u, 6);
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= 6; ++m) {
            const complex expect(n == m ? n : (std::abs(n - m) == 1 ? -1.0 : 0.0), 0.0);
            CHECK(std::abs(a(n, m) - expect) < 1e-15);
        }
}

TEST_CASE("lax matrix is exactly Hermitian for real potentials") {
    const auto u = testing::random_potential(128, 12, 0.5, 0.6, 21);
    const auto a = build_lax_matrix(u, 32);
    CHECK((a - a.adjoint()).norm() == 0.0);
}

TEST_CASE("zero potential maps to the zero state") {
    const ForwardResult fw = birkhoff_forward(FourierFunction(64), 8, 24);
    for (int n = 0; n <= 24; ++n) CHECK(fw.spectrum.lambda[n] == doctest::Approx(n));
    for (const complex& z : fw.state.zeta) CHECK(std::abs(z) < 1e-12);
    for (double g : fw.spectrum.gamma) CHECK(g < 1e-12);
}

TEST_CASE("one-gap potential: gamma_1 = r^2/(1-r^2), higher gaps vanish") {
    const double r = 0.5;
    const ForwardResult fw = birkhoff_forward(one_gap_potential(r, 512), 16, 128);
    const double expect = r * r / (1.0 - r * r);
    CHECK(fw.spectrum.gamma[0] == doctest::Approx(expect).epsilon(1e-8));
    for (int n = 2; n <= 16; ++n) CHECK(fw.spectrum.gamma[n - 1] <= 1e-9);

    // Parseval oracle: |u|^2 = 2 sum n gamma_n must be carried by gamma_1 alone
    CHECK(2.0 * fw.spectrum.gamma[0] == doctest::Approx(l2_norm_sq(one_gap_potential(r, 512)))
                                            .epsilon(1e-7));
}

TEST_CASE("|zeta_n|^2 equals the eigenvalue-gap actions") {
    const auto u = testing::random_potential(512, 10, 0.5, 0.5, 5);
    const ForwardResult fw = birkhoff_forward(u, 12, 128);
    for (int n = 1; n <= 12; ++n)
        CHECK(std::norm(fw.state.zeta[n - 1]) ==
              doctest::Approx(fw.spectrum.gamma[n - 1]).epsilon(1e-8).scale(1.0));
}

TEST_CASE("eigenvector columns stay orthonormal") {
    const auto u = testing::random_potential(256, 8, 0.6, 0.5, 33);
    const ForwardResult fw = birkhoff_forward(u, 8, 64);
    const auto& v = fw.spectrum.eigvecs;
    CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(65, 65)).norm() < 1e-10);
}

TEST_CASE("gamma_from_lambda basics and inversion") {
    CHECK(gamma_from_lambda(std::vector<double>{0.0, 1.0, 2.0}).sum() == 0.0);
    const Actions g = gamma_from_lambda(std::vector<double>{-0.5, 1.0, 2.0});
    CHECK(g.at(1) == doctest::Approx(0.5));
    CHECK(g.at(2) == doctest::Approx(0.0));

    const Actions rand_g = testing::random_actions(20, 0.7, 9);
    const Actions round = gamma_from_lambda(lambda_from_gamma(rand_g));
    for (int n = 1; n <= 20; ++n)
        CHECK(round.at(n) == doctest::Approx(rand_g.at(n)).epsilon(1e-12));

    CHECK_THROWS_AS(gamma_from_lambda(std::vector<double>{0.0, 0.5}), TruncationError);
}

TEST_CASE("trace identities of the extracted spectrum") {
    for (std::uint64_t seed : {101ull, 102ull}) {
        const auto u = testing::random_potential(1024, 12, 0.5, 0.55, seed);
        const ForwardResult fw = birkhoff_forward(u, 16, 256);
        const auto& s = fw.spectrum;
        double s0 = s.kappa[0], s1 = s.lambda[0] * s.kappa[0],
               s2 = s.lambda[0] * s.lambda[0] * s.kappa[0];
        for (int n = 1; n <= s.cutoff(); ++n) {
            const double w = s.kappa[n] * s.gamma[n - 1];
            s0 += w;
            s1 += s.lambda[n] * w;
            s2 += s.lambda[n] * s.lambda[n] * w;
        }
        CHECK(s0 == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(std::abs(s1) < 1e-6);
        CHECK(s2 == doctest::Approx(0.5 * l2_norm_sq(u)).epsilon(1e-6));
    }
}

TEST_CASE("mode-one projection of the extracted state matches uhat(1)") {
    const auto u = testing::random_potential(1024, 10, 0.45, 0.5, 77);
    const ForwardResult fw = birkhoff_forward(u, 24, 256);
    const SpectralParams params = SpectralParams::from_actions(fw.state.actions());
    const complex proj = mode_one_projection(fw.state, params);
    CHECK(std::abs(proj - u.coeff(1)) < 1e-6);
}

TEST_CASE("doubling the cutoff leaves the coordinates unchanged") {
    const auto u = testing::random_potential(1024, 8, 0.4, 0.5, 55);
    const ForwardResult a = birkhoff_forward(u, 8, 128);
    const ForwardResult b = birkhoff_forward(u, 8, 256);
    for (int n = 0; n < 8; ++n)
        CHECK(std::abs(a.state.zeta[n] - b.state.zeta[n]) < 1e-8);
}

TEST_CASE("Parseval through the map: |u|^2 = 2 sum n gamma_n") {
    const auto u = testing::random_potential(1024, 10, 0.4, 0.5, 91);
    const ForwardResult fw = birkhoff_forward(u, 64, 256);
    CHECK(2.0 * sobolev_norm_sq(fw.state, 0.0) ==
          doctest::Approx(l2_norm_sq(u)).epsilon(1e-6));
}

TEST_CASE("spectrum serializes to parseable JSON") {
    const ForwardResult fw = birkhoff_forward(one_gap_potential(0.3, 128), 4, 32);
    const auto j = nlohmann::json::parse(fw.spectrum.to_json());
    CHECK(j["lambda"].size() == 33);
    CHECK(j["gamma"].size() == 32);
    CHECK(j["zeta"].size() == 4);
    CHECK(j["zeta"][0][0].get<double>() != 0.0);
}
