#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bolab {

using complex = std::complex<double>;

/// Nonnegative actions gamma_n = |zeta_n|^2, n = 1..N, with the convention
/// gamma_0 = 1 exposed through at().
class Actions {
public:
    Actions() = default;
    explicit Actions(std::vector<double> gamma);

    int truncation() const { return static_cast<int>(gamma_.size()); }

    /// gamma_n for n >= 1; at(0) returns the constant 1.
    double at(int n) const;

    std::span<const double> raw() const { return gamma_; }
    double sum() const;

private:
    std::vector<double> gamma_;
};

/// Truncated Birkhoff coordinates zeta_1..zeta_N at time t.
/// zeta_0 = 1 is implicit and never stored.
struct BirkhoffState {
    double t = 0.0;
    std::vector<complex> zeta; // zeta[i] = zeta_{i+1}

    BirkhoffState() = default;
    BirkhoffState(double time, std::vector<complex> z);

    int truncation() const { return static_cast<int>(zeta.size()); }

    /// zeta_n with the zeta_0 = 1 convention; zero beyond the truncation.
    complex zeta_at(int n) const;

    Actions actions() const;
};

/// sum_{n=1}^{N} n^{1+2s} gamma_n, the squared h^{1/2+s} norm.
double sobolev_norm_sq(const BirkhoffState& state, double s);
double sobolev_norm_sq(const Actions& gamma, double s);

/// h^{1/2} norm squared of an arbitrary coefficient vector (z[i] = mode i+1).
double h_half_norm_sq(std::span<const complex> z);

} // namespace bolab
