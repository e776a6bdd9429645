#include "bolab/fourier.hpp"

#include "bolab/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace bolab {

namespace {

bool power_of_two(int m) { return m >= 2 && (m & (m - 1)) == 0; }

// FFTW plans are reused per grid size. Plan creation is not thread-safe,
// execution on distinct buffers is, so we use the new-array execute calls
// on caller-owned buffers and only lock around planning.
struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

PlanPair& plans_for(int m) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::scoped_lock lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    PlanPair p;
    std::vector<double> re(m);
    std::vector<fftw_complex> cx(m / 2 + 1);
    p.r2c = fftw_plan_dft_r2c_1d(m, re.data(), cx.data(), FFTW_ESTIMATE);
    p.c2r = fftw_plan_dft_c2r_1d(m, cx.data(), re.data(), FFTW_ESTIMATE);
    return cache.emplace(m, p).first->second;
}

} // namespace

FourierFunction::FourierFunction(int grid_size) : m_(grid_size) {
    if (!power_of_two(grid_size))
        throw InvalidInputError("grid size must be a power of two, got " + std::to_string(grid_size));
    coeffs_.assign(grid_size + 1, complex(0.0, 0.0));
}

complex FourierFunction::coeff(int n) const {
    if (n < -m_ / 2 || n > m_ / 2) return {0.0, 0.0};
    return coeffs_[n + m_ / 2];
}

void FourierFunction::set_coeff(int n, complex v) {
    if (n < -m_ / 2 || n > m_ / 2)
        throw InvalidInputError("mode index out of range");
    if (n == 0) {
        coeffs_[m_ / 2] = complex(v.real(), 0.0);
        return;
    }
    coeffs_[n + m_ / 2] = v;
    coeffs_[-n + m_ / 2] = std::conj(v);
}

bool FourierFunction::is_real(double tol) const {
    for (int n = 0; n <= m_ / 2; ++n) {
        if (std::abs(coeff(n) - std::conj(coeff(-n))) > tol) return false;
    }
    return true;
}

FourierFunction fourier_from_samples(std::span<const double> samples) {
    const int m = static_cast<int>(samples.size());
    if (!power_of_two(m)) throw InvalidInputError("sample count must be a power of two");
    for (double s : samples)
        if (!std::isfinite(s)) throw InvalidInputError("non-finite sample");

    std::vector<double> grid(samples.begin(), samples.end());
    std::vector<fftw_complex> half(m / 2 + 1);
    fftw_execute_dft_r2c(plans_for(m).r2c, grid.data(), half.data());

    FourierFunction u(m);
    for (int n = 1; n <= m / 2; ++n)
        u.set_coeff(n, complex(half[n][0], half[n][1]) / static_cast<double>(m));
    // zero-mean convention: drop uhat(0)
    return u;
}

std::vector<double> samples_from_fourier(const FourierFunction& u) {
    const int m = u.grid_size();
    if (m == 0) throw InvalidInputError("empty FourierFunction");
    std::vector<fftw_complex> half(m / 2 + 1);
    for (int n = 0; n <= m / 2; ++n) {
        complex c = u.coeff(n);
        if (n == m / 2) c = complex(c.real(), 0.0); // Nyquist must be real
        half[n][0] = c.real();
        half[n][1] = c.imag();
    }
    std::vector<double> grid(m);
    // FFTW's unnormalized c2r of the half spectrum is exactly sum_n uhat(n) e^{inx_j}
    fftw_execute_dft_c2r(plans_for(m).c2r, half.data(), grid.data());
    return grid;
}

double l2_norm_sq(const FourierFunction& u) {
    double s = 0.0;
    for (const complex& c : u.raw()) s += std::norm(c);
    return s;
}

FourierFunction one_gap_potential(double r, int grid_size) {
    if (r < 0.0 || r >= 1.0)
        throw InvalidInputError("one-gap parameter must satisfy 0 <= r < 1");
    FourierFunction u(grid_size);
    double rn = r;
    for (int n = 1; n <= grid_size / 2; ++n) {
        u.set_coeff(n, complex(rn, 0.0));
        rn *= r;
    }
    return u;
}

} // namespace bolab
