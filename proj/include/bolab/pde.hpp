#pragma once

#include "bolab/config.hpp"
#include "bolab/fourier.hpp"
#include "bolab/trajectory.hpp"

#include <string>
#include <vector>

namespace bolab {

/// Right-hand side of the damped equation in coefficients:
/// d uhat(n)/dt = i sgn(n) n^2 uhat(n) - i n (u^2)^(n) - (alpha/2) uhat(n) 1_{|n|=1},
/// with the quadratic term evaluated on the collocation grid under the
/// 2/3-rule dealiasing.
FourierFunction pde_rhs(const FourierFunction& u, double alpha);

/// Integrating-factor RK4 with a fixed step; the diagonal linear-plus-damping
/// symbol is integrated exactly so n^2 does not restrict the step. Samples at
/// the cadence config.sample_dt; mean and reality are enforced each step.
Trajectory pde_evolve(const FourierFunction& u0, const RunConfig& config);

struct CrossValidation {
    double max_action_discrepancy = 0.0; // over samples and n <= N/2
    double max_zeta_discrepancy = 0.0;
    std::vector<double> per_mode_action; // n = 1..N/2
    int compared_modes = 0;
    std::string to_json() const;
};

/// Runs the PDE oracle and the Birkhoff-coordinate integration on the same
/// initial data and compares the action trajectories through the direct map.
CrossValidation cross_validate(const FourierFunction& u0, const RunConfig& config);

} // namespace bolab
