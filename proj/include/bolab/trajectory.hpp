#pragma once

#include "bolab/config.hpp"
#include "bolab/state.hpp"

#include <string>
#include <vector>

namespace bolab {

/// Time-stamped samples of either a Birkhoff-coordinate run (state vector
/// zeta_1..zeta_N) or a PDE run (positive Fourier modes uhat(1..M/2)),
/// plus named per-sample diagnostic channels.
struct Trajectory {
    enum class Kind { birkhoff, fourier };

    Kind kind = Kind::birkhoff;
    std::vector<double> times;
    std::vector<std::vector<complex>> states;
    std::vector<std::string> channel_names;
    std::vector<std::vector<double>> channel_data; // [channel][sample]
    RunConfig meta;

    int samples() const { return static_cast<int>(times.size()); }

    const std::vector<double>& channel(const std::string& name) const;
    bool has_channel(const std::string& name) const;

    BirkhoffState state_at(int i) const; // birkhoff kind only
};

/// One header line; columns: t, channels, then Re/Im of the state entries
/// (re_zeta_n / im_zeta_n or re_u_n / im_u_n). Doubles are written with
/// round-trip precision so identical runs produce identical files.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_csv(const std::string& path);

void write_trajectory_json(const Trajectory& traj, const std::string& path);

} // namespace bolab
