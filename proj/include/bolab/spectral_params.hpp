#pragma once

#include "bolab/state.hpp"

namespace bolab {

/// Action-only spectral quantities of the truncated model.
///
/// Arrays are sized so that every index appearing in the vector-field
/// coefficient formulas is valid:
///   lambda[n], kappa[n] for 0 <= n <= N, mu[n] for 1 <= n <= N (mu[0] = 1
/// as a sentinel), a_star[n] for 0 <= n <= N-1.
struct SpectralParams {
    std::vector<double> lambda;
    std::vector<double> kappa;
    std::vector<double> mu;
    std::vector<double> a_star;

    /// Smallest product factor 1 - gamma_p/(lambda_p - lambda_n) met while
    /// building kappa and mu. Theory keeps it positive; values below ~1e-8
    /// mean the actions are nearly resonant and results are ill-conditioned.
    double min_factor = 1.0;

    int truncation() const { return static_cast<int>(lambda.size()) - 1; }

    static SpectralParams from_actions(const Actions& gamma);
};

/// lambda_n = n - sum_{k>n} gamma_k, one backward pass.
std::vector<double> lambda_from_gamma(const Actions& gamma);

/// kappa_0 = prod_{p>=1} (1 - gamma_p/(lambda_p - lambda_0)),
/// kappa_n = (lambda_n - lambda_0)^{-1} prod_{p != n} (1 - gamma_p/(lambda_p - lambda_n)).
/// Products are evaluated in log space once the truncation exceeds 256.
std::vector<double> kappa_from_gamma(const Actions& gamma);

/// mu_n = (1 - gamma_n/(lambda_n - lambda_0))
///        prod_{p != n} (1 - gamma_p/(lambda_p - lambda_n)) / (1 - gamma_p/(lambda_p - lambda_{n-1} - 1)).
std::vector<double> mu_from_gamma(const Actions& gamma);

/// a_n = sqrt(mu_{n+1}) sqrt(kappa_n / kappa_{n+1}), n = 0..N-1.
std::vector<double> a_star_from_params(const SpectralParams& params);

/// Matrix entry M_{n,p} = <f_p|S f_n> of the adjoint shift in the
/// eigenfunction basis:
///   sqrt(mu_{n+1})                                   if p = n+1,
///   sqrt(mu_{n+1}) sqrt(kappa_p/kappa_{n+1})
///       conj(zeta_p) zeta_{n+1} / (lambda_p - lambda_n - 1)   otherwise
/// (the zeta_{n+1} = 0 degenerate case reduces to delta_{p,n+1} on its own).
complex m_entry(int n, int p, const BirkhoffState& state, const SpectralParams& params);

} // namespace bolab
