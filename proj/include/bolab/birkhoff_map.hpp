#pragma once

#include "bolab/fourier.hpp"
#include "bolab/spectral_params.hpp"
#include "bolab/state.hpp"

#include <Eigen/Dense>

#include <string>

namespace bolab {

/// Spectrum of the truncated Lax operator L_u = D - T_u on the first
/// M_cut + 1 Hardy modes, with eigenvectors phase-normalized so that
/// <1|f_0> > 0 and <f_n|S f_{n-1}> > 0.
struct LaxSpectrum {
    std::vector<double> lambda;  // eigenvalues, ascending, 0..M_cut
    Eigen::MatrixXcd eigvecs;    // column n = Fourier coefficients of f_n
    std::vector<double> gamma;   // gamma_n = lambda_n - lambda_{n-1} - 1, clamped at 0
    std::vector<double> kappa;   // product formula evaluated on the extracted gamma
    std::vector<complex> zeta;   // zeta_n = <1|f_n>/sqrt(kappa_n), n = 1..N

    int cutoff() const { return static_cast<int>(lambda.size()) - 1; }

    std::string to_json() const;
};

struct ForwardResult {
    BirkhoffState state;
    LaxSpectrum spectrum;
};

/// A[n][m] = n delta_{n,m} - uhat(n - m), 0 <= n,m <= M_cut. Hermitian by the
/// reality of u.
Eigen::MatrixXcd build_lax_matrix(const FourierFunction& u, int m_cut);

/// Direct Birkhoff map: eigendecomposition of the truncated Lax matrix,
/// recursive phase normalization, gap extraction and coordinate read-off.
/// Needs M_cut >= 4N of headroom for the first N coordinates to be converged.
ForwardResult birkhoff_forward(const FourierFunction& u, int n_modes, int m_cut);

/// gamma_n = max(0, lambda_n - lambda_{n-1} - 1); spacings below 1 - 1e-6
/// raise a truncation error.
Actions gamma_from_lambda(std::span<const double> lambda);

} // namespace bolab
