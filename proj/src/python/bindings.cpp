// Python bindings for the main operations: the direct Birkhoff map, the
// action-only spectral parameters, the damped vector field, both integrators
// and the trajectory diagnostics.

#include "bolab/birkhoff_map.hpp"
#include "bolab/config.hpp"
#include "bolab/diagnostics.hpp"
#include "bolab/integrator.hpp"
#include "bolab/pde.hpp"
#include "bolab/vector_field.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bolab;

namespace {

FourierFunction potential_from_coeffs(const std::vector<complex>& coeffs, int grid_m) {
    FourierFunction u(grid_m);
    for (size_t i = 0; i < coeffs.size(); ++i)
        u.set_coeff(static_cast<int>(i) + 1, coeffs[i]);
    return u;
}

std::vector<complex> positive_coeffs(const FourierFunction& u) {
    std::vector<complex> out(u.max_mode());
    for (int n = 1; n <= u.max_mode(); ++n) out[n - 1] = u.coeff(n);
    return out;
}

RunConfig make_config(double alpha, int n_modes, int grid_m, double t_end, double sample_dt,
                      double tol, double pde_dt) {
    RunConfig c;
    c.alpha = alpha;
    c.n_modes = n_modes;
    c.grid_m = grid_m;
    c.t_end = t_end;
    c.sample_dt = sample_dt;
    c.tol = tol;
    c.pde_dt = pde_dt;
    return c;
}

py::dict trajectory_to_dict(const Trajectory& traj) {
    py::dict out;
    out["times"] = traj.times;
    out["states"] = traj.states;
    py::dict channels;
    for (size_t i = 0; i < traj.channel_names.size(); ++i)
        channels[traj.channel_names[i].c_str()] = traj.channel_data[i];
    out["channels"] = channels;
    return out;
}

} // namespace

PYBIND11_MODULE(_bolab, m) {
    m.doc() = "damped Benjamin-Ono laboratory (Birkhoff coordinates + PDE oracle)";

    m.def("one_gap", [](double r, int grid_m) {
        return positive_coeffs(one_gap_potential(r, grid_m));
    }, py::arg("r"), py::arg("grid_m") = 256,
        "Positive Fourier modes uhat(1..M/2) of the one-gap potential");

    m.def("fourier_from_samples", [](const std::vector<double>& samples) {
        return positive_coeffs(fourier_from_samples(samples));
    }, py::arg("samples"));

    m.def("samples_from_coeffs", [](const std::vector<complex>& coeffs, int grid_m) {
        return samples_from_fourier(potential_from_coeffs(coeffs, grid_m));
    }, py::arg("coeffs"), py::arg("grid_m"));

    m.def("l2_norm_sq", [](const std::vector<complex>& coeffs, int grid_m) {
        return l2_norm_sq(potential_from_coeffs(coeffs, grid_m));
    }, py::arg("coeffs"), py::arg("grid_m"));

    m.def("birkhoff_forward",
          [](const std::vector<complex>& coeffs, int grid_m, int n_modes, int m_cut) {
              const ForwardResult fw =
                  birkhoff_forward(potential_from_coeffs(coeffs, grid_m), n_modes, m_cut);
              py::dict out;
              out["zeta"] = fw.state.zeta;
              out["gamma"] = fw.spectrum.gamma;
              out["lambda"] = fw.spectrum.lambda;
              out["kappa"] = fw.spectrum.kappa;
              return out;
          },
          py::arg("coeffs"), py::arg("grid_m"), py::arg("n_modes"), py::arg("m_cut"),
          "Direct Birkhoff map of a real zero-mean potential");

    m.def("lambda_from_gamma",
          [](const std::vector<double>& g) { return lambda_from_gamma(Actions(g)); });
    m.def("kappa_from_gamma",
          [](const std::vector<double>& g) { return kappa_from_gamma(Actions(g)); });
    m.def("mu_from_gamma",
          [](const std::vector<double>& g) { return mu_from_gamma(Actions(g)); });
    m.def("a_star_from_gamma", [](const std::vector<double>& g) {
        return SpectralParams::from_actions(Actions(g)).a_star;
    });
    m.def("frequencies",
          [](const std::vector<double>& g) { return frequencies(Actions(g)); });

    m.def("mode_one_projection", [](const std::vector<complex>& zeta) {
        const BirkhoffState st(0.0, zeta);
        return mode_one_projection(st, SpectralParams::from_actions(st.actions()));
    }, py::arg("zeta"), "<u|e^{ix}> evaluated from Birkhoff coordinates");

    m.def("vector_field", [](const std::vector<complex>& zeta, double alpha) {
        return vector_field(BirkhoffState(0.0, zeta), alpha);
    }, py::arg("zeta"), py::arg("alpha"));

    m.def("dzeta_cos", [](const std::vector<complex>& zeta) {
        return dzeta_cos(FieldWorkspace(BirkhoffState(0.0, zeta)));
    }, py::arg("zeta"));
    m.def("dzeta_sin", [](const std::vector<complex>& zeta) {
        return dzeta_sin(FieldWorkspace(BirkhoffState(0.0, zeta)));
    }, py::arg("zeta"));

    m.def("dgamma_dt", [](const std::vector<complex>& zeta, double alpha) {
        const BirkhoffState st(0.0, zeta);
        return dgamma_dt(st, SpectralParams::from_actions(st.actions()), alpha);
    }, py::arg("zeta"), py::arg("alpha"));

    m.def("evolve",
          [](const std::vector<complex>& zeta0, double alpha, double t_end, double sample_dt,
             double tol) {
              RunConfig c = make_config(alpha, static_cast<int>(zeta0.size()), 256, t_end,
                                        sample_dt, tol, 0.0);
              return trajectory_to_dict(evolve(BirkhoffState(0.0, zeta0), c));
          },
          py::arg("zeta0"), py::arg("alpha"), py::arg("t_end"), py::arg("sample_dt") = 0.05,
          py::arg("tol") = 1e-10, "Adaptive integration in Birkhoff coordinates");

    m.def("pde_evolve",
          [](const std::vector<complex>& coeffs, int grid_m, double alpha, double t_end,
             double sample_dt, double pde_dt) {
              RunConfig c =
                  make_config(alpha, 16, grid_m, t_end, sample_dt, 1e-9, pde_dt);
              return trajectory_to_dict(
                  pde_evolve(potential_from_coeffs(coeffs, grid_m), c));
          },
          py::arg("coeffs"), py::arg("grid_m"), py::arg("alpha"), py::arg("t_end"),
          py::arg("sample_dt") = 0.05, py::arg("pde_dt") = 0.0,
          "Pseudospectral integration of the damped equation");

    m.def("cross_validate",
          [](const std::vector<complex>& coeffs, int grid_m, int n_modes, double alpha,
             double t_end, double sample_dt, double tol) {
              RunConfig c =
                  make_config(alpha, n_modes, grid_m, t_end, sample_dt, tol, 0.0);
              const CrossValidation cv =
                  cross_validate(potential_from_coeffs(coeffs, grid_m), c);
              py::dict out;
              out["max_action_discrepancy"] = cv.max_action_discrepancy;
              out["max_zeta_discrepancy"] = cv.max_zeta_discrepancy;
              out["per_mode_action"] = cv.per_mode_action;
              return out;
          },
          py::arg("coeffs"), py::arg("grid_m"), py::arg("n_modes"), py::arg("alpha"),
          py::arg("t_end"), py::arg("sample_dt") = 0.05, py::arg("tol") = 1e-10);

    m.def("lasalle_check", [](const std::vector<complex>& zeta, double eps) {
        const LaSalleResult r = lasalle_check(BirkhoffState(0.0, zeta), eps);
        return py::make_tuple(r.holds, r.witness, r.max_product);
    }, py::arg("zeta"), py::arg("eps") = 1e-6);

    m.def("generating_function", [](const std::vector<double>& gamma, double mu) {
        return generating_function(Actions(gamma), mu);
    }, py::arg("gamma"), py::arg("mu"));

    m.def("ps_functional", [](const std::vector<complex>& zeta, double s) {
        return ps_functional(BirkhoffState(0.0, zeta), s);
    }, py::arg("zeta"), py::arg("s"));

    m.def("sobolev_norm_sq", [](const std::vector<complex>& zeta, double s) {
        return sobolev_norm_sq(BirkhoffState(0.0, zeta), s);
    }, py::arg("zeta"), py::arg("s") = 0.0);
}
