#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bolab/errors.hpp"
#include "bolab/fourier.hpp"
#include "bolab/state.hpp"

#include "helpers.hpp"

#include <cmath>
#include <random>

using namespace bolab;

namespace {

std::vector<double> sample_function(const std::function<double(double)>& f, int m) {
    std::vector<double> s(m);
    for (int j = 0; j < m; ++j) s[j] = f(2.0 * M_PI * j / m);
    return s;
}

} // namespace

TEST_CASE("single cosine mode analyzes to unit coefficients") {
    const auto u = fourier_from_samples(sample_function([](double x) { return 2.0 * std::cos(x); }, 64));
    CHECK(std::abs(u.coeff(1) - complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(u.coeff(-1) - complex(1.0, 0.0)) < 1e-14);
    for (int n = 2; n <= 32; ++n) CHECK(std::abs(u.coeff(n)) < 1e-14);
    CHECK(u.coeff(0) == complex(0.0, 0.0));
}

TEST_CASE("zero samples give zero coefficients") {
    const std::vector<double> zeros(128, 0.0);
    const auto u = fourier_from_samples(zeros);
    CHECK(l2_norm_sq(u) == 0.0);
}

TEST_CASE("one-gap potential has the geometric coefficient ladder") {
    // oracle: brute-force quadrature of the closed-form density
    const double r = 0.5;
    auto density = [r](double x) {
        return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(x) + r * r) - 1.0;
    };
    const complex q1 = testing::quadrature_mode(density, 1);
    const complex q2 = testing::quadrature_mode(density, 2);
    CHECK(std::abs(q1 - complex(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(q2 - complex(0.25, 0.0)) < 1e-12);

    const auto u = fourier_from_samples(sample_function(density, 256));
    CHECK(std::abs(u.coeff(1) - complex(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(u.coeff(2) - complex(0.25, 0.0)) < 1e-12);

    const auto v = one_gap_potential(r, 256);
    for (int n = 1; n <= 20; ++n)
        CHECK(std::abs(u.coeff(n) - v.coeff(n)) < 1e-12);
}

TEST_CASE("non-finite samples are rejected") {
    std::vector<double> bad(64, 0.0);
    bad[5] = std::nan("");
    CHECK_THROWS_AS(fourier_from_samples(bad), InvalidInputError);
}

TEST_CASE("l2 norm matches quadrature") {
    const auto u = fourier_from_samples(sample_function([](double x) { return 2.0 * std::cos(x); }, 64));
    CHECK(l2_norm_sq(u) == doctest::Approx(2.0).epsilon(1e-13));

    const auto og = one_gap_potential(0.5, 256);
    CHECK(l2_norm_sq(og) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    auto density = [](double x) {
        return 0.75 / (1.25 - std::cos(x)) - 1.0;
    };
    complex q0 = testing::quadrature_mode([&](double x) { return density(x) * density(x); }, 0);
    CHECK(l2_norm_sq(og) == doctest::Approx(q0.real()).epsilon(1e-10));
}

TEST_CASE("analysis-synthesis round trip is the identity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int m : {8, 64, 256, 1024}) {
        std::vector<double> samples(m);
        for (double& s : samples) s += unit(rng);
        double mean = 0.0;
        for (double s : samples) mean += s;
        mean /= m;
        for (double& s : samples) s -= mean;

        const auto back = samples_from_fourier(fourier_from_samples(samples));
        double worst = 0.0;
        for (int j = 0; j < m; ++j) worst = std::max(worst, std::abs(back[j] - samples[j]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("reality and zero mean survive the returning operations") {
    const auto u = testing::random_potential(128, 10, 0.4, 0.6, 42);
    CHECK(u.is_real());
    CHECK(u.mean() == 0.0);
    const auto round = fourier_from_samples(samples_from_fourier(u));
    CHECK(round.is_real());
    CHECK(round.mean() == 0.0);
}

TEST_CASE("sobolev norm basics") {
    const BirkhoffState zero(0.0, std::vector<complex>(8, complex(0.0, 0.0)));
    CHECK(sobolev_norm_sq(zero, 0.0) == 0.0);
    CHECK(sobolev_norm_sq(zero, 1.0) == 0.0);

    std::vector<complex> z(4, complex(0.0, 0.0));
    z[0] = std::sqrt(1.0 / 3.0);
    const BirkhoffState one_mode(0.0, z);
    CHECK(sobolev_norm_sq(one_mode, 0.0) == doctest::Approx(1.0 / 3.0));

    // monotone nondecreasing in s
    const BirkhoffState st = testing::random_state(16, 0.5, 3);
    double prev = sobolev_norm_sq(st, 0.0);
    for (double s : {0.25, 0.5, 1.0, 1.4}) {
        const double cur = sobolev_norm_sq(st, s);
        CHECK(cur >= prev - 1e-15);
        prev = cur;
    }
}
