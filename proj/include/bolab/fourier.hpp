#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bolab {

using complex = std::complex<double>;

// Fourier-side conventions used throughout:
//   u(x) = sum_n uhat(n) e^{inx},   uhat(n) = (1/2pi) int_0^{2pi} u(x) e^{-inx} dx,
//   <f|g> = (1/2pi) int_0^{2pi} f(x) conj(g(x)) dx,  so  <f|g> = sum_n fhat(n) conj(ghat(n)).

/// Real, zero-mean periodic function stored as Fourier coefficients
/// uhat(n), |n| <= M/2, on a power-of-two grid of size M.
class FourierFunction {
public:
    FourierFunction() = default;
    explicit FourierFunction(int grid_size);

    int grid_size() const { return m_; }
    int max_mode() const { return m_ / 2; }

    /// uhat(n); zero outside |n| <= M/2.
    complex coeff(int n) const;

    /// Sets uhat(n) and uhat(-n) = conj(v) so the reality invariant holds by
    /// construction. n = 0 must be real (and is normally kept at 0).
    void set_coeff(int n, complex v);

    std::span<const complex> raw() const { return coeffs_; }

    bool is_real(double tol = 1e-14) const;
    double mean() const { return coeff(0).real(); }

private:
    int m_ = 0;
    std::vector<complex> coeffs_; // index i <-> mode n = i - M/2
};

/// Discrete Fourier analysis of real grid samples at x_j = 2pi j / M:
/// uhat(n) = (1/M) sum_j samples[j] e^{-in x_j}, then the mean is removed.
FourierFunction fourier_from_samples(std::span<const double> samples);

/// Inverse of fourier_from_samples (up to the removed mean).
std::vector<double> samples_from_fourier(const FourierFunction& u);

/// Parseval: sum_n |uhat(n)|^2 = (1/2pi) int u^2.
double l2_norm_sq(const FourierFunction& u);

/// The one-gap family u0(x) = (1-r^2)/(1-2r cos x + r^2) - 1, 0 <= r < 1,
/// i.e. uhat(n) = r^|n| for n != 0.
FourierFunction one_gap_potential(double r, int grid_size);

} // namespace bolab
