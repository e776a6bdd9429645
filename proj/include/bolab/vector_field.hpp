#pragma once

#include "bolab/spectral_params.hpp"
#include "bolab/state.hpp"

namespace bolab {

/// omega_n = n^2 - 2 sum_k min(k,n) gamma_k via prefix sums, n = 1..N.
std::vector<double> frequencies(const Actions& gamma);

/// <u|e^{ix}> = -sum_{n>=0} a_n conj(zeta_n) zeta_{n+1}  (zeta_0 = 1).
/// Equals <u|cos> - i <u|sin> = uhat(1) of the underlying potential.
complex mode_one_projection(const BirkhoffState& state, const SpectralParams& params);

/// Shared per-evaluation workspace for the damped vector field.
///
/// Everything that depends only on the actions (spectral parameters,
/// coefficient sums) plus the oscillating block values is assembled once per
/// state in O(N^2); the spectral parameters are padded by one extra zero
/// action so each coefficient formula can reference index N+1 directly.
class FieldWorkspace {
public:
    explicit FieldWorkspace(const BirkhoffState& state, bool with_differentials = true);

    int truncation() const { return n_; }
    const SpectralParams& params() const { return params_; }

    complex zeta(int n) const { return zeta_ext_[n]; } // zeta_0 = 1 convention
    double gamma(int n) const { return gamma_ext_[n]; } // gamma_0 = 1 convention

    complex m_diag(int n) const { return m_[n]; } // m_n = -a_n conj(zeta_n) zeta_{n+1}
    complex m_sum() const { return m_sum_; }      // = <u|e^{ix}>

    // d ln kappa_n[u].cos - i d ln kappa_n[u].sin, n = 0..N
    complex delta_kappa(int n) const { return delta_kappa_[n]; }
    // c_n^{+-} = <xi_n|e^{+-ix}>, n = 0..N
    complex c_plus(int n) const { return c_plus_[n]; }
    complex c_minus(int n) const { return c_minus_[n]; }
    // b_n^{+-} / sqrt(kappa_n), n = 1..N
    complex b_plus_norm(int n) const { return b_plus_[n]; }
    complex b_minus_norm(int n) const { return b_minus_[n]; }

    complex dzeta_cos(int n) const { return dzeta_cos_[n]; } // n = 1..N
    complex dzeta_sin(int n) const { return dzeta_sin_[n]; }

private:
    void build_m();
    void build_delta_kappa();
    void build_c_blocks();
    void build_b_blocks();
    void assemble_dzeta();

    int n_ = 0;
    SpectralParams params_; // padded: arrays valid up to index N+1
    std::vector<complex> zeta_ext_;  // zeta_0..zeta_{N+1} (last is 0)
    std::vector<double> gamma_ext_;  // 1, gamma_1..gamma_{N+1} (last is 0)
    std::vector<complex> m_;         // m_0..m_N (m_N = 0)
    complex m_sum_{0.0, 0.0};
    std::vector<complex> delta_kappa_, c_plus_, c_minus_, b_plus_, b_minus_;
    std::vector<complex> dzeta_cos_, dzeta_sin_;
};

/// Full arrays d zeta_n[u].cos and .sin for n = 1..N, assembled per the
/// decomposition  dzeta_n.cos = zeta_n(-i Im<xi_n|cos> - d ln kappa_n.cos / 2)
///                              + (b_n^+ + b_n^-)/(2 sqrt(kappa_n))
/// and the sin analogue with (b^+ - b^-)/(2i) and <xi_n|sin>.
std::vector<complex> dzeta_cos(const FieldWorkspace& ws);
std::vector<complex> dzeta_sin(const FieldWorkspace& ws);

/// Damped flow in Birkhoff coordinates:
/// d zeta_n/dt = i omega_n zeta_n - alpha(<u|cos> dzeta_n.cos + <u|sin> dzeta_n.sin).
std::vector<complex> vector_field(const BirkhoffState& state, double alpha);

/// Gauge-removed field on z_n = e^{-i n^2 t} zeta_n:
/// F_n(t,z) = i omega~_n(z) z_n - alpha e^{-i n^2 t} Z_n(zeta(t,z)),
/// omega~_n(z) = -2 sum_k min(k,n)|z_k|^2.
std::vector<complex> vector_field_gauge(double t, std::span<const complex> z, double alpha);

/// d gamma_n/dt = -alpha Re((m_{n-1} - m_n) conj(sum_p m_p)), n = 1..N.
std::vector<double> dgamma_dt(const BirkhoffState& state, const SpectralParams& params,
                              double alpha);

// --- coefficient tables of the vector-field decomposition, for tests and
// diagnostics. All are real-valued functions of the actions alone. `params`
// must come from FieldWorkspace (padded) or from actions with a trailing zero.

/// p_n = -sqrt(mu_n kappa_{n-1}) / (sqrt(kappa_n) (1 + gamma_n)), n >= 1.
double p_star(const SpectralParams& params, const Actions& gamma, int n);

/// q_n per its closed form (the p-sum includes p = 0 with weight gamma_0 = 1).
double q_star(const SpectralParams& params, const Actions& gamma, int n);

/// B_{n,k}: bulk coefficient of the b_n^- block; zero for k in {n-1, n}.
double b_bulk_coeff(const SpectralParams& params, int n, int k);

/// A_{n,k}: coefficient of conj(zeta_k) zeta_{k+1} in delta kappa_n.
double delta_kappa_coeff(const SpectralParams& params, const Actions& gamma, int n, int k);

/// A^+_{n,j} / A^-_{n,j}: coefficients of the c_n^{+-} blocks.
double c_plus_coeff(const SpectralParams& params, const Actions& gamma, int n, int j);
double c_minus_coeff(const SpectralParams& params, const Actions& gamma, int n, int j);

} // namespace bolab
