#include "bolab/config.hpp"

#include "bolab/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace bolab {

using nlohmann::json;

int RunConfig::effective_lax_cut() const {
    if (lax_cut > 0) return lax_cut;
    return std::min(grid_m / 2, 4 * n_modes);
}

namespace {

InitialData initial_from_json(const json& j, std::vector<std::string>& errors) {
    InitialData d;
    const std::string type = j.value("type", "");
    if (type == "one_gap") {
        d.type = InitialData::Type::one_gap;
        d.r = j.value("r", -1.0);
        if (!(d.r >= 0.0 && d.r < 1.0))
            errors.push_back("initial_data.r: one-gap parameter must satisfy 0 <= r < 1");
    } else if (type == "fourier") {
        d.type = InitialData::Type::fourier_coeffs;
        if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty()) {
            errors.push_back("initial_data.coeffs: need a non-empty array of [re, im] pairs");
        } else {
            for (const auto& c : j["coeffs"]) {
                if (!c.is_array() || c.size() != 2) {
                    errors.push_back("initial_data.coeffs: entries must be [re, im] pairs");
                    break;
                }
                d.coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
            }
        }
    } else if (type == "file") {
        d.type = InitialData::Type::file;
        d.path = j.value("path", "");
        if (d.path.empty()) errors.push_back("initial_data.path: missing");
    } else if (type == "random") {
        d.type = InitialData::Type::random;
        d.random_modes = j.value("modes", 8);
        d.random_amplitude = j.value("amplitude", 0.3);
        d.random_decay = j.value("decay", 0.5);
        if (d.random_modes < 1) errors.push_back("initial_data.modes: must be >= 1");
        if (!(d.random_decay > 0.0 && d.random_decay < 1.0))
            errors.push_back("initial_data.decay: must lie in (0, 1)");
    } else {
        errors.push_back("initial_data.type: expected one of one_gap|fourier|file|random");
    }
    return d;
}

json initial_to_json(const InitialData& d) {
    json j;
    switch (d.type) {
    case InitialData::Type::one_gap:
        j["type"] = "one_gap";
        j["r"] = d.r;
        break;
    case InitialData::Type::fourier_coeffs: {
        j["type"] = "fourier";
        auto& arr = j["coeffs"] = json::array();
        for (const complex& c : d.coeffs) arr.push_back({c.real(), c.imag()});
        break;
    }
    case InitialData::Type::file:
        j["type"] = "file";
        j["path"] = d.path;
        break;
    case InitialData::Type::random:
        j["type"] = "random";
        j["modes"] = d.random_modes;
        j["amplitude"] = d.random_amplitude;
        j["decay"] = d.random_decay;
        break;
    }
    return j;
}

} // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInputError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig c;
    std::vector<std::string> errors;
    auto get_num = [&](const char* key, double fallback, auto pred, const char* what) {
        double v = fallback;
        if (j.contains(key)) {
            if (!j[key].is_number()) {
                errors.push_back(std::string(key) + ": " + what);
                return fallback;
            }
            v = j[key].get<double>();
        }
        if (!pred(v)) errors.push_back(std::string(key) + ": " + what);
        return v;
    };

    c.alpha = get_num("alpha", 0.0, [](double v) { return v >= 0.0; }, "must be >= 0");
    c.n_modes = static_cast<int>(
        get_num("N", 32, [](double v) { return v >= 1 && v == std::floor(v); },
                "must be a positive integer"));
    c.grid_m = static_cast<int>(get_num(
        "M", 256,
        [](double v) { return v >= 4 && v == std::floor(v) && (int(v) & (int(v) - 1)) == 0; },
        "must be a power of two >= 4"));
    c.lax_cut = static_cast<int>(get_num(
        "M_cut", 0, [](double v) { return v >= 0 && v == std::floor(v); },
        "must be a nonnegative integer (0 selects the default)"));
    c.t_end = get_num("t_end", 1.0, [](double v) { return v > 0.0; }, "must be > 0");
    c.sample_dt = get_num("sample_dt", 0.05, [](double v) { return v > 0.0; }, "must be > 0");
    c.tol = get_num("tol", 1e-9, [](double v) { return v > 0.0; }, "must be > 0");
    c.pde_dt = get_num("pde_dt", 0.0, [](double v) { return v >= 0.0; }, "must be >= 0");
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();

    if (j.contains("ps_exponents")) {
        c.ps_exponents.clear();
        for (const auto& s : j["ps_exponents"]) {
            const double v = s.get<double>();
            if (v < 0.0 || v >= 1.5)
                errors.push_back("ps_exponents: entries must lie in [0, 1.5)");
            c.ps_exponents.push_back(v);
        }
    }

    if (!j.contains("initial_data")) {
        errors.push_back("initial_data: missing");
    } else {
        c.initial_data = initial_from_json(j["initial_data"], errors);
    }

    if (c.lax_cut > c.grid_m / 2)
        errors.push_back("M_cut: must not exceed M/2");

    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "invalid config (" << errors.size() << " problem(s)):";
        for (const auto& e : errors) msg << "\n  - " << e;
        throw InvalidInputError(msg.str());
    }
    return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string RunConfig::to_json() const {
    json j;
    j["alpha"] = alpha;
    j["N"] = n_modes;
    j["M"] = grid_m;
    j["M_cut"] = lax_cut;
    j["t_end"] = t_end;
    j["sample_dt"] = sample_dt;
    j["tol"] = tol;
    j["pde_dt"] = pde_dt;
    j["ps_exponents"] = ps_exponents;
    j["seed"] = seed;
    j["initial_data"] = initial_to_json(initial_data);
    return j.dump(2);
}

FourierFunction make_initial_data(const RunConfig& config) {
    const InitialData& d = config.initial_data;
    switch (d.type) {
    case InitialData::Type::one_gap:
        return one_gap_potential(d.r, config.grid_m);
    case InitialData::Type::fourier_coeffs: {
        FourierFunction u(config.grid_m);
        for (size_t i = 0; i < d.coeffs.size(); ++i) {
            const int n = static_cast<int>(i) + 1;
            if (n > config.grid_m / 2)
                throw InvalidInputError("initial coefficients exceed M/2");
            u.set_coeff(n, d.coeffs[i]);
        }
        return u;
    }
    case InitialData::Type::file: {
        std::ifstream in(d.path);
        if (!in) throw InvalidInputError("cannot open initial-data file: " + d.path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw InvalidInputError(std::string("bad initial-data file: ") + e.what());
        }
        FourierFunction u(config.grid_m);
        int n = 1;
        for (const auto& c : j.at("coeffs")) {
            if (n > config.grid_m / 2) throw InvalidInputError("initial-data file exceeds M/2");
            u.set_coeff(n++, complex(c.at(0).get<double>(), c.at(1).get<double>()));
        }
        return u;
    }
    case InitialData::Type::random: {
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
        FourierFunction u(config.grid_m);
        double amp = d.random_amplitude;
        for (int n = 1; n <= std::min(d.random_modes, config.grid_m / 2); ++n) {
            u.set_coeff(n, std::polar(amp, phase(rng)));
            amp *= d.random_decay;
        }
        return u;
    }
    }
    throw InvalidInputError("unknown initial-data type");
}

std::string config_hash(const RunConfig& config) {
    const std::string text = config.to_json();
    std::uint64_t h = 1469598103934665603ull; // FNV-1a 64
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace bolab
