#include "bolab/trajectory.hpp"

#include "bolab/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bolab {

const std::vector<double>& Trajectory::channel(const std::string& name) const {
    for (size_t i = 0; i < channel_names.size(); ++i)
        if (channel_names[i] == name) return channel_data[i];
    throw InvalidInputError("no diagnostic channel named '" + name + "'");
}

bool Trajectory::has_channel(const std::string& name) const {
    return std::find(channel_names.begin(), channel_names.end(), name) != channel_names.end();
}

BirkhoffState Trajectory::state_at(int i) const {
    if (kind != Kind::birkhoff)
        throw InvalidInputError("trajectory does not hold Birkhoff states");
    return BirkhoffState(times[i], states[i]);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);

    const char* stem = traj.kind == Trajectory::Kind::birkhoff ? "zeta" : "u";
    out << "t";
    for (const auto& name : traj.channel_names) out << "," << name;
    const size_t width = traj.states.empty() ? 0 : traj.states[0].size();
    for (size_t n = 1; n <= width; ++n)
        out << ",re_" << stem << "_" << n << ",im_" << stem << "_" << n;
    out << "\n";

    for (int i = 0; i < traj.samples(); ++i) {
        out << fmt(traj.times[i]);
        for (const auto& col : traj.channel_data) out << "," << fmt(col[i]);
        for (const complex& c : traj.states[i])
            out << "," << fmt(c.real()) << "," << fmt(c.imag());
        out << "\n";
    }
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path);

    std::string header;
    if (!std::getline(in, header)) throw Error("empty trajectory file: " + path);

    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string item;
        while (std::getline(ss, item, ',')) cols.push_back(item);
    }
    if (cols.empty() || cols[0] != "t") throw Error("malformed trajectory header");

    Trajectory traj;
    size_t first_state = cols.size();
    for (size_t i = 1; i < cols.size(); ++i) {
        if (cols[i].rfind("re_", 0) == 0) {
            first_state = i;
            break;
        }
        traj.channel_names.push_back(cols[i]);
    }
    traj.kind = (first_state < cols.size() && cols[first_state].rfind("re_zeta", 0) == 0)
                    ? Trajectory::Kind::birkhoff
                    : Trajectory::Kind::fourier;
    const size_t width = (cols.size() - first_state) / 2;
    traj.channel_data.assign(traj.channel_names.size(), {});

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string item;
        std::vector<double> row;
        while (std::getline(ss, item, ',')) row.push_back(std::stod(item));
        if (row.size() != cols.size()) throw Error("ragged trajectory row");
        traj.times.push_back(row[0]);
        for (size_t c = 0; c < traj.channel_names.size(); ++c)
            traj.channel_data[c].push_back(row[1 + c]);
        std::vector<complex> state(width);
        for (size_t n = 0; n < width; ++n)
            state[n] = complex(row[first_state + 2 * n], row[first_state + 2 * n + 1]);
        traj.states.push_back(std::move(state));
    }
    return traj;
}

void write_trajectory_json(const Trajectory& traj, const std::string& path) {
    nlohmann::json j;
    j["kind"] = traj.kind == Trajectory::Kind::birkhoff ? "birkhoff" : "fourier";
    j["t"] = traj.times;
    for (size_t i = 0; i < traj.channel_names.size(); ++i)
        j["channels"][traj.channel_names[i]] = traj.channel_data[i];
    auto& st = j["states"] = nlohmann::json::array();
    for (const auto& s : traj.states) {
        nlohmann::json row = nlohmann::json::array();
        for (const complex& c : s) row.push_back({c.real(), c.imag()});
        st.push_back(std::move(row));
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

} // namespace bolab
