#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lindblad/certificates.hpp"
#include "lindblad/evolution.hpp"
#include "lindblad/ladder.hpp"
#include "lindblad/model_io.hpp"
#include "lindblad/operators.hpp"
#include "lindblad/perturbation.hpp"
#include "lindblad/scenarios.hpp"
#include "lindblad/superop.hpp"

namespace py = pybind11;

namespace {

using lindblad::Matrix;

lindblad::LindbladModel model_from(const std::vector<Matrix>& jumps,
                                   const Matrix& h) {
  const auto dim = h.rows();
  lindblad::HamiltonianSchedule sched =
      h.isZero(0.0) ? lindblad::HamiltonianSchedule::zero(dim)
                    : lindblad::HamiltonianSchedule::make_constant(h);
  return lindblad::make_model(lindblad::make_jump_set(dim, jumps),
                              std::move(sched));
}

Matrix default_h(const std::vector<Matrix>& jumps) {
  if (jumps.empty()) throw std::invalid_argument("need at least one jump");
  return Matrix::Zero(jumps.front().rows(), jumps.front().cols());
}

py::dict certificate_dict(const lindblad::ContractionCertificate& cert) {
  py::dict d;
  d["method"] = lindblad::to_string(cert.method);
  d["gamma"] = cert.gamma;
  d["K"] = cert.K;
  d["R"] = cert.R;
  d["r"] = cert.r;
  d["mu2"] = cert.mu2;
  d["notes"] = cert.notes;
  return d;
}

py::dict perturbed_dict(const lindblad::PerturbedContraction& p) {
  py::dict d;
  d["feasible"] = p.feasible;
  d["gamma_tilde"] = p.gamma_tilde;
  d["K_tilde"] = p.K_tilde;
  d["x_star"] = p.x_star;
  d["limit_case"] = p.limit_case;
  d["note"] = p.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(pylindblad, m) {
  m.doc() =
      "Contraction certificates and simulation for driven-dissipative "
      "Lindblad models";

  m.def(
      "superoperator",
      [](const std::vector<Matrix>& jumps, const Matrix& h) {
        return lindblad::build_superoperator(model_from(jumps, h), 0.0);
      },
      py::arg("jumps"), py::arg("hamiltonian"),
      "Column-stacking matrix of the generator");

  m.def(
      "certify",
      [](const std::vector<Matrix>& jumps, int restarts, std::uint64_t seed) {
        const auto dim = jumps.empty() ? 0 : jumps.front().rows();
        return certificate_dict(lindblad::certify(
            lindblad::make_jump_set(dim, jumps), restarts, seed));
      },
      py::arg("jumps"), py::arg("restarts") = 64, py::arg("seed") = 0,
      "Best available contraction certificate for a dissipator");

  m.def(
      "rate_R",
      [](const std::vector<Matrix>& jumps, int restarts, std::uint64_t seed) {
        const auto dim = jumps.empty() ? 0 : jumps.front().rows();
        return lindblad::rate_R(lindblad::make_jump_set(dim, jumps), restarts,
                                seed)
            .value;
      },
      py::arg("jumps"), py::arg("restarts") = 64, py::arg("seed") = 0);

  m.def(
      "rate_r",
      [](const std::vector<Matrix>& jumps, int restarts, std::uint64_t seed) {
        const auto dim = jumps.empty() ? 0 : jumps.front().rows();
        return lindblad::rate_r(lindblad::make_jump_set(dim, jumps), restarts,
                                seed)
            .value;
      },
      py::arg("jumps"), py::arg("restarts") = 64, py::arg("seed") = 0);

  m.def(
      "mu2",
      [](const std::vector<Matrix>& jumps) {
        const auto dim = jumps.empty() ? 0 : jumps.front().rows();
        lindblad::JumpSet set = lindblad::make_jump_set(dim, jumps);
        auto [traceless, shift] = lindblad::normalize_jumps(
            set, Matrix::Zero(dim, dim));
        (void)shift;
        return lindblad::rate_mu2(traceless).mu2;
      },
      py::arg("jumps"), "Largest traceless eigenvalue of the symmetrized dissipator");

  m.def(
      "fixed_points",
      [](const std::vector<Matrix>& jumps, const Matrix& h, double tol) {
        return lindblad::fixed_points(
                   lindblad::build_superoperator(model_from(jumps, h), 0.0),
                   tol)
            .fixed_points;
      },
      py::arg("jumps"), py::arg("hamiltonian"), py::arg("tol") = 1e-9);

  m.def(
      "spectral_gap",
      [](const std::vector<Matrix>& jumps, const Matrix& h) {
        auto rep = lindblad::spectral_gap(
            lindblad::build_superoperator(model_from(jumps, h), 0.0));
        py::dict d;
        d["lambda2"] = rep.lambda2;
        d["gap"] = rep.gap;
        d["lambda2_defined"] = rep.lambda2_defined;
        return d;
      },
      py::arg("jumps"), py::arg("hamiltonian"));

  m.def(
      "propagate",
      [](const std::vector<Matrix>& jumps, const Matrix& h, const Matrix& x0,
         double t, double dt) {
        lindblad::PropagatorOptions opts;
        opts.dt = dt;
        return lindblad::propagate(model_from(jumps, h), 0.0, t, x0, opts);
      },
      py::arg("jumps"), py::arg("hamiltonian"), py::arg("x0"), py::arg("t"),
      py::arg("dt") = 1e-2);

  m.def(
      "contraction_envelope",
      [](const std::vector<Matrix>& jumps, const Matrix& h, const Matrix& rho,
         const Matrix& sigma, const std::vector<double>& grid) {
        return lindblad::contraction_envelope(model_from(jumps, h), rho, sigma,
                                              grid, {});
      },
      py::arg("jumps"), py::arg("hamiltonian"), py::arg("rho"),
      py::arg("sigma"), py::arg("times"));

  m.def(
      "trace_norm_right_derivative",
      [](const std::vector<Matrix>& jumps, const Matrix& x) {
        auto model = model_from(jumps, default_h(jumps));
        return lindblad::trace_norm_right_derivative(model, 0.0, x).value;
      },
      py::arg("jumps"), py::arg("x"));

  m.def("trace_norm", &lindblad::trace_norm, py::arg("x"));

  m.def(
      "ladder_mu2",
      [](const std::vector<double>& alphas, double eta) {
        const auto d = static_cast<Eigen::Index>(alphas.size()) + 1;
        return lindblad::ladder_mu2(lindblad::make_ladder_spec(d, alphas, eta));
      },
      py::arg("alphas"), py::arg("eta") = 1.0);

  m.def("c_alpha", &lindblad::c_alpha, py::arg("alpha"));

  m.def(
      "perturbed_rate",
      [](double K, double gamma, double delta) {
        return perturbed_dict(lindblad::perturbed_rate({K, gamma}, delta));
      },
      py::arg("K"), py::arg("gamma"), py::arg("delta"));

  m.def(
      "slow_drive_rate",
      [](double K0, double gamma0, double l) {
        return perturbed_dict(lindblad::slow_drive_rate({K0, gamma0}, l));
      },
      py::arg("K0"), py::arg("gamma0"), py::arg("l"));

  m.def("parse_model_text", &lindblad::parse_model_text, py::arg("json_text"),
        "Validate a model file; raises ValueError on malformed input");
  m.def(
      "serialize_model",
      [](const std::vector<Matrix>& jumps, const Matrix& h) {
        return lindblad::serialize_model(model_from(jumps, h));
      },
      py::arg("jumps"), py::arg("hamiltonian"));

  py::class_<lindblad::LindbladModel>(m, "LindbladModel")
      .def_readonly("dim", &lindblad::LindbladModel::dim);

  m.def("depolarizing_jumps", [](double gamma) {
    return lindblad::depolarizing_model(gamma).jumps.jumps;
  }, py::arg("gamma") = 1.0);
  m.def("ce1_jumps", [] { return lindblad::ce1_jumps().jumps; });
}
