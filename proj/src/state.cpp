#include "bolab/state.hpp"

#include "bolab/errors.hpp"

#include <cmath>

namespace bolab {

Actions::Actions(std::vector<double> gamma) : gamma_(std::move(gamma)) {
    for (double g : gamma_)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw InvalidInputError("actions must be finite and nonnegative");
}

double Actions::at(int n) const {
    if (n == 0) return 1.0;
    if (n < 1 || n > truncation()) return 0.0;
    return gamma_[n - 1];
}

double Actions::sum() const {
    double s = 0.0;
    for (double g : gamma_) s += g;
    return s;
}

BirkhoffState::BirkhoffState(double time, std::vector<complex> z) : t(time), zeta(std::move(z)) {
    if (zeta.empty()) throw InvalidInputError("truncation order must be >= 1");
    for (const complex& c : zeta)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidInputError("non-finite Birkhoff coordinate");
}

complex BirkhoffState::zeta_at(int n) const {
    if (n == 0) return {1.0, 0.0};
    if (n < 1 || n > truncation()) return {0.0, 0.0};
    return zeta[n - 1];
}

Actions BirkhoffState::actions() const {
    std::vector<double> g(zeta.size());
    for (size_t i = 0; i < zeta.size(); ++i) g[i] = std::norm(zeta[i]);
    return Actions(std::move(g));
}

double sobolev_norm_sq(const BirkhoffState& state, double s) {
    return sobolev_norm_sq(state.actions(), s);
}

double sobolev_norm_sq(const Actions& gamma, double s) {
    double acc = 0.0;
    for (int n = 1; n <= gamma.truncation(); ++n)
        acc += std::pow(static_cast<double>(n), 1.0 + 2.0 * s) * gamma.at(n);
    return acc;
}

double h_half_norm_sq(std::span<const complex> z) {
    double acc = 0.0;
    for (size_t i = 0; i < z.size(); ++i)
        acc += static_cast<double>(i + 1) * std::norm(z[i]);
    return acc;
}

} // namespace bolab
