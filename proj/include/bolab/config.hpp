#pragma once

#include "bolab/fourier.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bolab {

/// Tagged initial-data choice.
struct InitialData {
    enum class Type { one_gap, fourier_coeffs, file, random };
    Type type = Type::one_gap;

    double r = 0.5;               // one_gap
    std::vector<complex> coeffs;  // fourier_coeffs: uhat(1..K)
    std::string path;             // file: JSON with a "coeffs" array
    int random_modes = 8;         // random: uhat(n) = amplitude * decay^{n-1} e^{i phi_n}
    double random_amplitude = 0.3;
    double random_decay = 0.5;
};

struct RunConfig {
    double alpha = 0.0;   // damping coefficient, >= 0
    int n_modes = 32;     // Birkhoff truncation N
    int grid_m = 256;     // PDE grid size M (power of two)
    int lax_cut = 0;      // Galerkin cutoff; 0 -> min(M/2, 4N)
    double t_end = 1.0;
    double sample_dt = 0.05;
    double tol = 1e-9;    // integrator tolerance
    double pde_dt = 0.0;  // fixed PDE step; 0 -> CFL-based choice
    std::vector<double> ps_exponents = {0.0, 1.0};
    std::uint64_t seed = 0;
    InitialData initial_data;

    int effective_lax_cut() const;

    /// Parses and validates; the error message lists every offending field.
    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_json_file(const std::string& path);
    std::string to_json() const;
};

/// Builds the configured initial potential on the configured grid.
FourierFunction make_initial_data(const RunConfig& config);

/// Stable content hash of the canonical config serialization (FNV-1a).
std::string config_hash(const RunConfig& config);

} // namespace bolab
