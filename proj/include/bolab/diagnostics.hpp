#pragma once

#include "bolab/birkhoff_map.hpp"
#include "bolab/state.hpp"
#include "bolab/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bolab {

/// Per-interval residuals of d/dt ||u||^2 + 2 alpha |<u|e^{ix}>|^2 = 0:
/// r_i = Delta_i(2 sum n gamma_n) + 2 alpha * trapezoid(|<u|e^{ix}>|^2).
std::vector<double> lyapunov_residual(const Trajectory& traj, double alpha);

struct GapProductIntegral {
    double total = 0.0;         // trapezoid of int sum_n gamma_n gamma_{n+1} dt
    double tail_fraction = 0.0; // contribution of the last 20% of the window
};
GapProductIntegral gap_product_integral(const Trajectory& traj);

struct LaSalleResult {
    bool holds = false;
    int witness = 0;       // n maximizing |zeta_n zeta_{n+1}|
    double max_product = 0.0;
};
/// True iff max_n |zeta_n zeta_{n+1}| <= eps with zeta_0 = 1.
LaSalleResult lasalle_check(const BirkhoffState& state, double eps);

/// H_mu = sum_n kappa_n gamma_n / (lambda_n + mu), gamma_0 = 1.
double generating_function(std::span<const double> lambda, std::span<const double> kappa,
                           std::span<const double> gamma, double mu);
double generating_function(const LaxSpectrum& spec, double mu);
double generating_function(const Actions& gamma, double mu);

/// P_s = sum_n w_n gamma_n with w_n = sum_{k=1}^{n-1} k^{2s}.
double ps_functional(const BirkhoffState& state, double s);

/// Closed-form dP_s/dt = -alpha sum c_n a_n^2 gamma_n gamma_{n+1}
///                       - alpha/2 sum_{n != p} (c_n + c_p) a_n a_p eta_{n,p}.
double ps_derivative(const BirkhoffState& state, double s, double alpha);

/// Per-interval residuals Delta P_s - trapezoid(dP_s/dt closed form).
std::vector<double> ps_derivative_residual(const Trajectory& traj, double s, double alpha);

struct LimitingActions {
    std::vector<double> mean;   // per-n mean over the final window
    std::vector<double> spread; // per-n max - min over the final window
};
LimitingActions limiting_actions(const Trajectory& traj, double window_fraction);

struct DiagnosticCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct DiagnosticReport {
    std::vector<DiagnosticCheck> checks;
    std::vector<std::pair<std::string, std::vector<double>>> series;
    std::string provenance;

    bool all_pass() const;
    std::string to_json() const;
    std::string summary_table() const;
};

/// Runs every post-hoc check on a trajectory. Fourier-kind trajectories are
/// first mapped through the direct Birkhoff map sample by sample.
DiagnosticReport diagnose_trajectory(const Trajectory& traj, const RunConfig& config);

} // namespace bolab
