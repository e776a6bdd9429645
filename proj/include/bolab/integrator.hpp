#pragma once

#include "bolab/config.hpp"
#include "bolab/state.hpp"
#include "bolab/trajectory.hpp"

#include <span>

namespace bolab {

struct StepResult {
    std::vector<complex> z;
    double error; // embedded 4th/5th-order difference in the h^{1/2} norm
};

/// One Dormand-Prince 5(4) step of the gauge system z' = F(t, z).
StepResult rk_step(double t, std::span<const complex> z, double dt, double alpha);

/// Adaptive integration of the gauge system with per-step error control in
/// the h^{1/2} norm against config.tol. Samples land on exact multiples of
/// sample_dt through cubic Hermite interpolation of the accepted steps;
/// zeta_n(t) = e^{i n^2 t} z_n(t) is reconstructed at each sample.
Trajectory evolve(const BirkhoffState& initial, const RunConfig& config);

/// Diagnostic channels recorded at each sample of a Birkhoff trajectory:
/// l2_norm_sq = 2 sum n gamma_n, mode1_sq = |<u|e^{ix}>|^2,
/// gap_product = sum gamma_n gamma_{n+1} (gamma_0 = 1), and ps_<s> values.
std::vector<std::string> diagnostic_channel_names(const RunConfig& config);
std::vector<double> diagnostic_channel_values(const BirkhoffState& state,
                                              const RunConfig& config);

} // namespace bolab
