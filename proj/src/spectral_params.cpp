#include "bolab/spectral_params.hpp"

#include "bolab/errors.hpp"

#include <cmath>
#include <string>

namespace bolab {

namespace {

// Direct multiplication keeps full relative accuracy for short sequences;
// beyond 256 actions the near-unit factors are accumulated as logs so
// kappa_n ~ 1/n cannot degrade through gradual underflow of the product.
constexpr int kLogSpaceThreshold = 256;

void check_factor(double f, double& min_factor, const char* what) {
    if (f < min_factor) min_factor = f;
    if (!(f > 0.0))
        throw InternalConsistencyError(std::string(what) +
                                       ": nonpositive product factor " + std::to_string(f));
}

} // namespace

std::vector<double> lambda_from_gamma(const Actions& gamma) {
    const int n_max = gamma.truncation();
    std::vector<double> lambda(n_max + 1);
    double suffix = 0.0;
    for (int n = n_max; n >= 0; --n) {
        lambda[n] = n - suffix;
        if (n >= 1) suffix += gamma.at(n); // becomes sum_{k>n-1} for the next step
    }
    return lambda;
}

namespace {

std::vector<double> kappa_impl(const Actions& gamma, const std::vector<double>& lambda,
                               double& min_factor) {
    const int n_max = gamma.truncation();
    const bool log_space = n_max > kLogSpaceThreshold;
    std::vector<double> kappa(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        double prod = 1.0, log_sum = 0.0;
        for (int p = 1; p <= n_max; ++p) {
            if (p == n) continue;
            const double f = 1.0 - gamma.at(p) / (lambda[p] - lambda[n]);
            check_factor(f, min_factor, "kappa");
            if (log_space)
                log_sum += std::log(f);
            else
                prod *= f;
        }
        const double base = (n == 0) ? 1.0 : 1.0 / (lambda[n] - lambda[0]);
        kappa[n] = log_space ? base * std::exp(log_sum) : base * prod;
    }
    return kappa;
}

std::vector<double> mu_impl(const Actions& gamma, const std::vector<double>& lambda,
                            double& min_factor) {
    const int n_max = gamma.truncation();
    const bool log_space = n_max > kLogSpaceThreshold;
    std::vector<double> mu(n_max + 1);
    mu[0] = 1.0; // sentinel, mu is defined for n >= 1
    for (int n = 1; n <= n_max; ++n) {
        double prod = 1.0, log_sum = 0.0;
        for (int p = 1; p <= n_max; ++p) {
            if (p == n) continue;
            const double num = 1.0 - gamma.at(p) / (lambda[p] - lambda[n]);
            const double den = 1.0 - gamma.at(p) / (lambda[p] - lambda[n - 1] - 1.0);
            check_factor(num, min_factor, "mu");
            check_factor(den, min_factor, "mu");
            if (log_space)
                log_sum += std::log(num) - std::log(den);
            else
                prod *= num / den;
        }
        const double head = 1.0 - gamma.at(n) / (lambda[n] - lambda[0]);
        check_factor(head, min_factor, "mu");
        mu[n] = log_space ? head * std::exp(log_sum) : head * prod;
    }
    return mu;
}

} // namespace

std::vector<double> kappa_from_gamma(const Actions& gamma) {
    double min_factor = 1.0;
    return kappa_impl(gamma, lambda_from_gamma(gamma), min_factor);
}

std::vector<double> mu_from_gamma(const Actions& gamma) {
    double min_factor = 1.0;
    return mu_impl(gamma, lambda_from_gamma(gamma), min_factor);
}

std::vector<double> a_star_from_params(const SpectralParams& params) {
    const int n_max = params.truncation();
    std::vector<double> a(n_max);
    for (int n = 0; n < n_max; ++n)
        a[n] = std::sqrt(params.mu[n + 1]) * std::sqrt(params.kappa[n] / params.kappa[n + 1]);
    return a;
}

SpectralParams SpectralParams::from_actions(const Actions& gamma) {
    SpectralParams p;
    p.lambda = lambda_from_gamma(gamma);
    p.kappa = kappa_impl(gamma, p.lambda, p.min_factor);
    p.mu = mu_impl(gamma, p.lambda, p.min_factor);
    p.a_star = a_star_from_params(p);
    return p;
}

complex m_entry(int n, int p, const BirkhoffState& state, const SpectralParams& params) {
    if (p == n + 1) {
        // beyond the truncation all actions vanish and mu reduces to 1
        if (n + 1 > params.truncation()) return {1.0, 0.0};
        return {std::sqrt(params.mu[n + 1]), 0.0};
    }
    const complex z_next = state.zeta_at(n + 1);
    if (z_next == complex(0.0, 0.0)) return {0.0, 0.0}; // delta_{p,n+1} case
    return std::sqrt(params.mu[n + 1]) *
           std::sqrt(params.kappa[p] / params.kappa[n + 1]) * std::conj(state.zeta_at(p)) *
           z_next / (params.lambda[p] - params.lambda[n] - 1.0);
}

} // namespace bolab
