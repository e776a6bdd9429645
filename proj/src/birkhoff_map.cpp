#include "bolab/birkhoff_map.hpp"

#include "bolab/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace bolab {

namespace {

constexpr double kSpacingTol = 1e-6;
constexpr double kDegeneratePhaseTol = 1e-10;

// <f|g> = sum_k fhat(k) conj(ghat(k)) on Hardy coefficients.
complex bracket_one(const Eigen::VectorXcd& f) { return std::conj(f(0)); } // <1|f>

complex bracket_shift(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
    // <f|Sg> = sum_k fhat(k) conj(ghat(k-1))
    complex acc(0.0, 0.0);
    for (int k = 1; k < f.size(); ++k) acc += f(k) * std::conj(g(k - 1));
    return acc;
}

} // namespace

Eigen::MatrixXcd build_lax_matrix(const FourierFunction& u, int m_cut) {
    if (m_cut < 1 || m_cut > u.grid_size() / 2)
        throw InvalidInputError("lax cutoff must satisfy 1 <= M_cut <= M/2");
    if (!u.is_real(1e-12))
        throw InvalidInputError("potential violates the reality invariant");

    Eigen::MatrixXcd a(m_cut + 1, m_cut + 1);
    for (int n = 0; n <= m_cut; ++n) {
        a(n, n) = complex(n - u.coeff(0).real(), 0.0);
        for (int m = 0; m < n; ++m) {
            const complex v = -u.coeff(n - m);
            a(n, m) = v;
            a(m, n) = std::conj(v); // exact Hermiticity by construction
        }
    }
    return a;
}

Actions gamma_from_lambda(std::span<const double> lambda) {
    std::vector<double> gamma(lambda.size() - 1);
    for (size_t n = 1; n < lambda.size(); ++n) {
        const double g = lambda[n] - lambda[n - 1] - 1.0;
        if (g < -kSpacingTol)
            throw TruncationError("eigenvalue spacing " + std::to_string(lambda[n] - lambda[n - 1]) +
                                  " below 1 at n=" + std::to_string(n) +
                                  "; increase the Galerkin cutoff");
        gamma[n - 1] = std::max(0.0, g);
    }
    return Actions(std::move(gamma));
}

ForwardResult birkhoff_forward(const FourierFunction& u, int n_modes, int m_cut) {
    if (n_modes < 1) throw InvalidInputError("need at least one Birkhoff mode");
    if (m_cut < 2 * n_modes)
        throw InvalidInputError("Galerkin cutoff too small: need M_cut >= 2N "
                                "(4N recommended for full convergence)");

    Eigen::MatrixXcd a = build_lax_matrix(u, m_cut);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    if (solver.info() != Eigen::Success)
        throw Error("Hermitian eigensolver failed");

    LaxSpectrum spec;
    spec.lambda.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + m_cut + 1);
    spec.eigvecs = solver.eigenvectors(); // ascending eigenvalues, orthonormal columns

    // Phase normalization: fix f_0 by <1|f_0> > 0, then each f_n by
    // <f_n|S f_{n-1}> > 0. When the shift bracket degenerates (zeta_n = 0)
    // fall back to making the largest coefficient real positive.
    {
        Eigen::VectorXcd f0 = spec.eigvecs.col(0);
        const complex b = bracket_one(f0);
        if (std::abs(b) > kDegeneratePhaseTol)
            spec.eigvecs.col(0) *= b / std::abs(b); // <1|f_0> = conj(f_0(0)) becomes |b|
        else {
            int imax = 0;
            f0.cwiseAbs().maxCoeff(&imax);
            spec.eigvecs.col(0) *= std::abs(f0(imax)) / f0(imax);
        }
    }
    for (int n = 1; n <= m_cut; ++n) {
        const Eigen::VectorXcd fn = spec.eigvecs.col(n);
        const complex b = bracket_shift(fn, spec.eigvecs.col(n - 1));
        if (std::abs(b) > kDegeneratePhaseTol) {
            spec.eigvecs.col(n) *= std::conj(b) / std::abs(b);
        } else {
            int imax = 0;
            fn.cwiseAbs().maxCoeff(&imax);
            spec.eigvecs.col(n) *= std::abs(fn(imax)) / fn(imax);
        }
    }

    // The top edge of the truncated matrix carries spurious spacings (the
    // missing couplings push the last eigenvalues up by ~|uhat(1)|^2). For a
    // resolved potential the true actions there are below double precision,
    // so only the converged band is kept; this makes kappa and the extracted
    // coordinates independent of the cutoff.
    Actions gamma_raw = gamma_from_lambda(spec.lambda);
    std::vector<double> g(gamma_raw.raw().begin(), gamma_raw.raw().end());
    for (int p = 3 * m_cut / 4 + 1; p <= m_cut; ++p) g[p - 1] = 0.0;
    Actions gamma(std::move(g));
    spec.gamma.assign(gamma.raw().begin(), gamma.raw().end());
    spec.kappa = kappa_from_gamma(gamma);

    spec.zeta.resize(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        if (n > m_cut) {
            spec.zeta[n - 1] = complex(0.0, 0.0);
            continue;
        }
        spec.zeta[n - 1] = bracket_one(spec.eigvecs.col(n)) / std::sqrt(spec.kappa[n]);
    }

    ForwardResult result;
    result.state = BirkhoffState(0.0, spec.zeta);
    result.spectrum = std::move(spec);
    return result;
}

std::string LaxSpectrum::to_json() const {
    nlohmann::json j;
    j["lambda"] = lambda;
    j["gamma"] = gamma;
    j["kappa"] = kappa;
    auto& zj = j["zeta"] = nlohmann::json::array();
    for (const complex& z : zeta) zj.push_back({z.real(), z.imag()});
    return j.dump(2);
}

} // namespace bolab
