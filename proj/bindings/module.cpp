#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fluxatom/corpus.hpp"
#include "fluxatom/jump.hpp"
#include "fluxatom/version.hpp"

namespace py = pybind11;
using namespace fluxatom;

namespace {

BlochState state_from(double u0, cx v0) {
  BlochState st;
  st.u = u0;
  st.v = v0;
  st.t = 0.0;
  validate_state(st);
  return st;
}

py::dict line_dict(const LineShape& line) {
  py::dict d;
  d["A"] = line.A;
  d["B"] = line.B;
  d["C"] = line.C;
  d["Gamma"] = line.Gamma;
  d["epsilon"] = line.epsilon;
  d["resonance_omega"] = line.resonance_omega;
  d["positive"] = line.positive;
  return d;
}

}  // namespace

PYBIND11_MODULE(_fluxatom, mod) {
  mod.doc() = "Two-level photoemissive source laboratory";
  mod.attr("__version__") = version;
  py::register_exception<Error>(mod, "FluxatomError");

  py::class_<HPModel>(mod, "Model")
      .def(py::init([](double omega0, const CVec& alpha, const CMat& S_plus, const CMat& S_minus) {
             return make_model(omega0, alpha, S_plus, S_minus);
           }),
           py::arg("omega0"), py::arg("alpha"), py::arg("S_plus"), py::arg("S_minus"))
      .def_readonly("n", &HPModel::n)
      .def_readonly("omega0", &HPModel::omega0)
      .def_readonly("alpha", &HPModel::alpha)
      .def_readonly("S_plus", &HPModel::S_plus)
      .def_readonly("S_minus", &HPModel::S_minus);

  py::class_<Drive>(mod, "Drive")
      .def(py::init([](const HPModel& m, const CVec& lam, double omega) {
             Drive d = make_drive(lam, omega);
             validate_drive(d, m);
             return d;
           }),
           py::arg("model"), py::arg("lam"), py::arg("omega"))
      .def_readonly("lam", &Drive::lambda)
      .def_readonly("omega", &Drive::omega);

  py::class_<SphericalModel>(mod, "Spherical")
      .def(py::init([](double alpha_norm, double s_plus, double s_minus, std::vector<cx> g_plus,
                       std::vector<cx> g_minus, double eta, double delta, double omega0,
                       double omega, double c_light) {
             SphericalModel sm{alpha_norm, s_plus, s_minus, std::move(g_plus), std::move(g_minus),
                               eta,        delta,  omega0,  omega,             c_light};
             validate_spherical(sm);
             return sm;
           }),
           py::arg("alpha_norm"), py::arg("s_plus"), py::arg("s_minus"),
           py::arg("g_plus") = std::vector<cx>{}, py::arg("g_minus") = std::vector<cx>{},
           py::arg("eta") = 1.0, py::arg("delta") = 0.0, py::arg("omega0") = 1.0,
           py::arg("omega") = 1.0, py::arg("c_light") = 1.0)
      .def_readwrite("alpha_norm", &SphericalModel::alpha_norm)
      .def_readwrite("s_plus", &SphericalModel::s_plus)
      .def_readwrite("s_minus", &SphericalModel::s_minus)
      .def_readwrite("g_plus", &SphericalModel::g_plus)
      .def_readwrite("g_minus", &SphericalModel::g_minus)
      .def_readwrite("eta", &SphericalModel::eta)
      .def_readwrite("delta", &SphericalModel::delta)
      .def_readwrite("omega0", &SphericalModel::omega0)
      .def_readwrite("omega", &SphericalModel::omega)
      .def_readwrite("c_light", &SphericalModel::c_light);

  mod.def(
      "g_scalars",
      [](const HPModel& m, const Drive& d) {
        const GSystem gs = g_system(m, d);
        py::dict out;
        out["G"] = gs.G;
        out["w"] = gs.w;
        out["alpha_norm2"] = gs.alpha_norm2;
        out["lambda_norm2"] = gs.lambda_norm2;
        out["z_plus"] = gs.z_plus;
        out["z_minus"] = gs.z_minus;
        out["mu2"] = gs.mu2;
        out["kappa2"] = gs.kappa2;
        out["delta_omega"] = gs.delta_omega;
        out["J"] = gs.J;
        out["Gamma2"] = gs.Gamma2;
        return out;
      },
      py::arg("model"), py::arg("drive"));

  mod.def(
      "steady",
      [](const HPModel& m, const Drive& d) {
        const SteadyState st = steady_state(m, d);
        py::dict out;
        out["u_inf"] = st.u_inf;
        out["v_inf"] = st.v_inf;
        out["rho_eq"] = st.rho_eq;
        return out;
      },
      py::arg("model"), py::arg("drive"));

  mod.def("default_step", &default_step, py::arg("model"), py::arg("drive"));

  mod.def(
      "evolve",
      [](const HPModel& m, const Drive& d, double t_end, double h, double u0, cx v0) {
        const auto states = evolve(m, d, state_from(u0, v0), t_end, h);
        std::vector<double> t, u;
        std::vector<cx> v;
        for (const auto& s : states) {
          t.push_back(s.t);
          u.push_back(s.u);
          v.push_back(s.v);
        }
        py::dict out;
        out["t"] = t;
        out["u"] = u;
        out["v"] = v;
        return out;
      },
      py::arg("model"), py::arg("drive"), py::arg("t_end"), py::arg("h") = 0.0,
      py::arg("u0") = 0.0, py::arg("v0") = cx(0.0, 0.0));

  mod.def(
      "photon_count",
      [](const HPModel& m, const Drive& d, double t_end, double h, double u0, cx v0) {
        const CountingRecord rec = photon_count(m, d, state_from(u0, v0), t_end, h);
        py::dict out;
        out["t"] = rec.t;
        out["rate"] = rec.emission_rate;
        out["n_mean"] = rec.n_mean;
        out["balance"] = rec.balance;
        return out;
      },
      py::arg("model"), py::arg("drive"), py::arg("t_end"), py::arg("h") = 0.0,
      py::arg("u0") = 0.0, py::arg("v0") = cx(0.0, 0.0));

  mod.def(
      "flux_ratio",
      [](const HPModel& m, const Drive& d, double t_end, double h, double u0, cx v0) {
        const auto samples = flux_ratio(m, d, state_from(u0, v0), t_end, h);
        std::vector<double> t, ratio, bound;
        for (const auto& s : samples) {
          t.push_back(s.t);
          ratio.push_back(s.ratio);
          bound.push_back(s.bound);
        }
        py::dict out;
        out["t"] = t;
        out["ratio"] = ratio;
        out["bound"] = bound;
        return out;
      },
      py::arg("model"), py::arg("drive"), py::arg("t_end"), py::arg("h") = 0.0,
      py::arg("u0") = 0.0, py::arg("v0") = cx(0.0, 0.0));

  mod.def("default_jump_dt", &default_jump_dt, py::arg("model"), py::arg("drive"));

  mod.def(
      "jump_mc",
      [](const HPModel& m, const Drive& d, double t_end, double dt, int n_traj, std::uint64_t seed,
         int n_samples, double u0, cx v0) {
        const TrajectoryEnsemble ens =
            jump_monte_carlo(m, d, state_from(u0, v0), t_end, dt, n_traj, seed, n_samples);
        py::dict out;
        out["t"] = ens.t;
        out["rho"] = ens.rho;
        out["jumps_total"] = ens.jumps_total;
        out["jumps_channel"] = ens.jumps_channel;
        out["n_traj"] = ens.n_traj;
        out["seed"] = ens.seed;
        out["dt"] = ens.dt;
        return out;
      },
      py::arg("model"), py::arg("drive"), py::arg("t_end"), py::arg("dt") = 0.0,
      py::arg("n_traj") = 2000, py::arg("seed") = 0, py::arg("n_samples") = 100,
      py::arg("u0") = 0.0, py::arg("v0") = cx(0.0, 0.0));

  mod.def(
      "spherical_scalars",
      [](const SphericalModel& sm) {
        const SphericalScalars sc = spherical_scalars(sm);
        py::dict out;
        out["kappa2"] = sc.kappa2;
        out["mu2"] = sc.mu2;
        out["Gamma2"] = sc.Gamma2;
        out["delta_omega"] = sc.delta_omega;
        out["epsilon"] = sc.epsilon;
        return out;
      },
      py::arg("spherical"));

  mod.def("steady_spherical", &steady_state_spherical, py::arg("spherical"));

  mod.def(
      "diff_xs",
      [](const SphericalModel& sm, double theta) { return differential_cross_section(sm, theta); },
      py::arg("spherical"), py::arg("theta"));

  mod.def(
      "total_xs",
      [](const SphericalModel& sm) {
        const TotalCrossSection tot = total_cross_section(sm);
        py::dict out;
        out["sigma_tot"] = tot.sigma_tot;
        out["sigma_hat"] = tot.sigma_hat;
        out["line"] = line_dict(tot.line);
        return out;
      },
      py::arg("spherical"));

  mod.def(
      "lineshape",
      [](const SphericalModel& sm, double lo, double hi, int n, bool in_x) {
        const LineScan scan = lineshape_scan(sm, lo, hi, n, in_x);
        std::vector<double> omega, delta_omega, x, sigma_hat, sigma_tot, u_inf;
        std::vector<cx> v_inf;
        for (const auto& r : scan.rows) {
          omega.push_back(r.omega);
          delta_omega.push_back(r.delta_omega);
          x.push_back(r.x);
          sigma_hat.push_back(r.sigma_hat);
          sigma_tot.push_back(r.sigma_tot);
          u_inf.push_back(r.u_inf);
          v_inf.push_back(r.v_inf);
        }
        py::dict out;
        out["omega"] = omega;
        out["delta_omega"] = delta_omega;
        out["x"] = x;
        out["sigma_hat"] = sigma_hat;
        out["sigma_tot"] = sigma_tot;
        out["u_inf"] = u_inf;
        out["v_inf"] = v_inf;
        out["line"] = line_dict(scan.line);
        out["steepest_omega"] = scan.steepest_omega;
        return out;
      },
      py::arg("spherical"), py::arg("lo"), py::arg("hi"), py::arg("n"), py::arg("in_x") = false);

  mod.def("embed_partial_waves", &embed_partial_waves, py::arg("delta_plus"), py::arg("delta_minus"),
          py::arg("alpha_norm"), py::arg("eta"), py::arg("delta"), py::arg("omega0"),
          py::arg("omega"), py::arg("dtheta"));

  mod.def("spherical_from_phase_shifts", &spherical_from_phase_shifts, py::arg("delta_plus"),
          py::arg("delta_minus"), py::arg("alpha_norm"), py::arg("eta"), py::arg("delta"),
          py::arg("omega0"), py::arg("omega"), py::arg("c_light") = 1.0);

  mod.def("random_model", &make_random_model, py::arg("seed"), py::arg("n"));
  mod.def("random_drive", &make_random_drive, py::arg("seed"), py::arg("model"));
  mod.def("random_spherical", &make_random_spherical, py::arg("seed"));
}
