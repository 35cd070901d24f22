#include "lindblad/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lindblad/certificates.hpp"
#include "lindblad/evolution.hpp"
#include "lindblad/ladder.hpp"
#include "lindblad/model_io.hpp"
#include "lindblad/operators.hpp"
#include "lindblad/perturbation.hpp"
#include "lindblad/scenarios.hpp"
#include "lindblad/superop.hpp"

namespace lindblad {

namespace {

using nlohmann::json;

std::string join_argv(int argc, char** argv) {
  std::string echo;
  for (int i = 0; i < argc; ++i) {
    if (i) echo += ' ';
    echo += argv[i];
  }
  return echo;
}

std::string hex_digest(std::uint64_t d) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

// Reads the model and hashes the raw file bytes for the report.
LindbladModel load_model_digest(const std::string& path, std::uint64_t& digest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  digest = fnv1a(bytes);
  try {
    return parse_model_text(bytes);
  } catch (const ModelParseError& e) {
    throw ModelParseError(path + ": " + e.path(), e.what());
  }
}

json make_report(const std::string& echo, std::uint64_t digest) {
  json r;
  r["command"] = echo;
  r["inputs_digest"] = hex_digest(digest);
  r["warnings"] = json::array();
  return r;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json certificate_json(const ContractionCertificate& cert) {
  json c;
  c["method"] = to_string(cert.method);
  c["gamma"] = cert.gamma;
  c["K"] = cert.K;
  c["R"] = cert.R;
  c["r"] = cert.r;
  c["mu2"] = cert.mu2;
  c["mu2_multiplicity"] = cert.mu2_multiplicity;
  c["flags"] = {{"unital", cert.flags.unital},
                {"antiherm_span", cert.flags.antiherm_span},
                {"algebra_full_with_daggers", cert.flags.algebra_full_with_daggers},
                {"algebra_full_jumps_only", cert.flags.algebra_full_jumps_only},
                {"d2_contractive", cert.flags.d2_contractive},
                {"d3_sufficient", cert.flags.d3_sufficient}};
  return c;
}

json perturbed_json(const PerturbedContraction& p) {
  json r;
  r["feasible"] = p.feasible;
  r["gamma_tilde"] = p.gamma_tilde;
  r["K_tilde"] = p.K_tilde;
  r["x_star"] = p.x_star;
  r["limit_case"] = p.limit_case;
  return r;
}

std::string csv_table(const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& columns) {
  std::string out;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    if (c) out += ',';
    out += headers[c];
  }
  out += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      out += format_real(columns[c][r]);
    }
    out += '\n';
  }
  return out;
}

std::vector<double> linspace(double a, double b, int points) {
  if (points < 2 || !(b > a)) {
    throw std::invalid_argument("need at least 2 grid points and t-end > 0");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        a + (b - a) * double(i) / double(points - 1);
  }
  grid.back() = b;
  return grid;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write output file: " + out_path);
  f << text;
}

struct CliState {
  std::string echo;
  std::string out_path;
  std::string output;
};

void add_out_option(CLI::App* cmd, CliState& state) {
  cmd->add_option("--out", state.out_path, "write the report to this file");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "Contraction certificates, spectra, and simulation for "
      "driven-dissipative Lindblad models"};
  app.require_subcommand(1);

  CliState state;
  state.echo = join_argv(argc, argv);

  // certify
  std::string certify_model;
  int certify_restarts = 64;
  std::uint64_t certify_seed = 0;
  auto* certify_cmd = app.add_subcommand(
      "certify", "decide an exponential contraction certificate");
  certify_cmd->add_option("--model", certify_model, "model JSON file")
      ->required();
  certify_cmd->add_option("--restarts", certify_restarts,
                          "optimizer restarts for R and r");
  certify_cmd->add_option("--seed", certify_seed, "random seed");
  add_out_option(certify_cmd, state);
  certify_cmd->callback([&] {
    std::uint64_t digest = 0;
    LindbladModel model = load_model_digest(certify_model, digest);
    ContractionCertificate cert =
        certify(model.jumps, certify_restarts, certify_seed);
    json report = make_report(state.echo, digest);
    report["results"] = {{"certificate", certificate_json(cert)}};
    for (const std::string& n : cert.notes) report["warnings"].push_back(n);
    state.output = report.dump(2) + "\n";
  });

  // spectrum
  std::string spectrum_model;
  double spectrum_time = 0.0;
  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "superoperator eigenvalues and spectral gap");
  spectrum_cmd->add_option("--model", spectrum_model, "model JSON file")
      ->required();
  spectrum_cmd->add_option("--time", spectrum_time,
                           "evaluation time for driven Hamiltonians");
  add_out_option(spectrum_cmd, state);
  spectrum_cmd->callback([&] {
    std::uint64_t digest = 0;
    LindbladModel model = load_model_digest(spectrum_model, digest);
    SpectrumReport rep =
        spectral_gap(build_superoperator(model, spectrum_time));
    json report = make_report(state.echo, digest);
    json eigs = json::array();
    for (const Complex& ev : rep.eigenvalues) {
      eigs.push_back(json::array({ev.real(), ev.imag()}));
    }
    report["results"] = {
        {"eigenvalues", std::move(eigs)},
        {"lambda2", json::array({rep.lambda2.real(), rep.lambda2.imag()})},
        {"lambda2_defined", rep.lambda2_defined},
        {"gap", rep.gap},
        {"time", spectrum_time}};
    for (const std::string& n : rep.notes) report["warnings"].push_back(n);
    state.output = report.dump(2) + "\n";
  });

  // fixed-points
  std::string fp_model;
  double fp_tol = 1e-9;
  auto* fp_cmd =
      app.add_subcommand("fixed-points", "kernel of the superoperator");
  fp_cmd->add_option("--model", fp_model, "model JSON file")->required();
  fp_cmd->add_option("--tol", fp_tol, "relative kernel tolerance");
  add_out_option(fp_cmd, state);
  fp_cmd->callback([&] {
    std::uint64_t digest = 0;
    LindbladModel model = load_model_digest(fp_model, digest);
    SpectrumReport rep = fixed_points(build_superoperator(model, 0.0), fp_tol);
    json report = make_report(state.echo, digest);
    json mats = json::array();
    for (const Matrix& m : rep.fixed_points) mats.push_back(matrix_json(m));
    report["results"] = {{"fixed_point_count", rep.fixed_point_count},
                         {"fixed_points", std::move(mats)}};
    if (model.hamiltonian.time_dependent()) {
      report["warnings"].push_back(
          "Hamiltonian is time-dependent; kernel computed at t = 0");
    }
    for (const std::string& n : rep.notes) report["warnings"].push_back(n);
    state.output = report.dump(2) + "\n";
  });

  // simulate
  std::string sim_model, sim_initial, sim_observable;
  double sim_t_end = 0.0, sim_dt = 1e-2;
  int sim_points = 201;
  auto* sim_cmd =
      app.add_subcommand("simulate", "observable series along a trajectory");
  sim_cmd->add_option("--model", sim_model, "model JSON file")->required();
  sim_cmd->add_option("--t-end", sim_t_end, "final time")->required();
  sim_cmd->add_option("--dt", sim_dt, "base integrator step");
  sim_cmd->add_option("--initial", sim_initial,
                      "initial state: ket over 0/1/+/- or inline matrix")
      ->required();
  sim_cmd->add_option("--observable", sim_observable,
                      "Pauli string over I/X/Y/Z or inline matrix")
      ->required();
  sim_cmd->add_option("--points", sim_points, "grid points in the CSV");
  add_out_option(sim_cmd, state);
  sim_cmd->callback([&] {
    std::uint64_t digest = 0;
    LindbladModel model = load_model_digest(sim_model, digest);
    Matrix rho = parse_state_spec(sim_initial, model.dim);
    Matrix obs = parse_observable_spec(sim_observable, model.dim);
    PropagatorOptions opts;
    opts.dt = sim_dt;
    Trajectory traj = observable_trajectory(model, {rho}, obs,
                                            linspace(0.0, sim_t_end, sim_points),
                                            opts);
    state.output =
        csv_table({"t", "value"}, {traj.times, traj.observables.at("state0")});
  });

  // envelope
  std::string env_model, env_rho, env_sigma;
  double env_t_end = 0.0, env_dt = 1e-2;
  int env_points = 201;
  auto* env_cmd = app.add_subcommand(
      "envelope", "trace norm of the evolved difference of two states");
  env_cmd->add_option("--model", env_model, "model JSON file")->required();
  env_cmd->add_option("--rho", env_rho, "first state spec")->required();
  env_cmd->add_option("--sigma", env_sigma, "second state spec")->required();
  env_cmd->add_option("--t-end", env_t_end, "final time")->required();
  env_cmd->add_option("--dt", env_dt, "base integrator step");
  env_cmd->add_option("--points", env_points, "grid points in the CSV");
  add_out_option(env_cmd, state);
  env_cmd->callback([&] {
    std::uint64_t digest = 0;
    LindbladModel model = load_model_digest(env_model, digest);
    Matrix rho = parse_state_spec(env_rho, model.dim);
    Matrix sigma = parse_state_spec(env_sigma, model.dim);
    PropagatorOptions opts;
    opts.dt = env_dt;
    std::vector<double> grid = linspace(0.0, env_t_end, env_points);
    std::vector<double> series =
        contraction_envelope(model, rho, sigma, grid, opts);
    state.output = csv_table({"t", "trace_norm"}, {grid, series});
  });

  // ladder
  auto* ladder_cmd =
      app.add_subcommand("ladder", "single-jump ladder dissipators");
  ladder_cmd->require_subcommand(1);

  std::string scan_family;
  int scan_dmax = 0;
  double scan_gamma = 1.0;
  auto* scan_cmd =
      ladder_cmd->add_subcommand("scan", "mu2 across dimensions for a family");
  scan_cmd->add_option("--family", scan_family, "ho, am, or ul")
      ->required()
      ->check(CLI::IsMember({"ho", "am", "ul"}));
  scan_cmd->add_option("--dmax", scan_dmax, "largest dimension")->required();
  scan_cmd->add_option("--gamma", scan_gamma, "family rate");
  add_out_option(scan_cmd, state);
  scan_cmd->callback([&] {
    LadderFamily family = scan_family == "ho"   ? LadderFamily::HO
                          : scan_family == "am" ? LadderFamily::AM
                                                : LadderFamily::UL;
    std::vector<FamilyScanRow> rows = family_scan(family, scan_dmax, scan_gamma);
    std::vector<double> ds, mu2s;
    for (const FamilyScanRow& row : rows) {
      ds.push_back(double(row.d));
      mu2s.push_back(row.mu2);
    }
    state.output = csv_table({"d", "mu2"}, {ds, mu2s});
  });

  double ca_min = 0.0, ca_max = 0.0;
  int ca_steps = 0;
  auto* ca_cmd = ladder_cmd->add_subcommand(
      "c-alpha", "three-level certificate constant over an alpha range");
  ca_cmd->add_option("--min", ca_min, "first alpha")->required();
  ca_cmd->add_option("--max", ca_max, "last alpha")->required();
  ca_cmd->add_option("--steps", ca_steps, "sample count")->required();
  add_out_option(ca_cmd, state);
  ca_cmd->callback([&] {
    if (ca_steps < 1 || !(ca_min > 0.0) || ca_max < ca_min) {
      throw std::invalid_argument("need 0 < min <= max and steps >= 1");
    }
    std::vector<double> alphas, values;
    for (int i = 0; i < ca_steps; ++i) {
      const double a = ca_steps == 1 ? ca_min
                                     : ca_min + (ca_max - ca_min) * double(i) /
                                                    double(ca_steps - 1);
      alphas.push_back(a);
      values.push_back(c_alpha(a));
    }
    state.output = csv_table({"alpha", "c_alpha"}, {alphas, values});
  });

  // perturb
  auto* perturb_cmd = app.add_subcommand(
      "perturb", "contraction constants under generator perturbations");
  perturb_cmd->require_subcommand(1);
  double pk = 1.0, pgamma = 1.0, pvmax = 0.0, phdot = 0.0, pdelta = 0.0;
  double pavg = 0.0, phorizon = 0.0;

  auto perturb_report = [&state](const char* name, const json& inputs,
                                 const PerturbedContraction& p) {
    json report = make_report(state.echo, fnv1a(state.echo));
    report["results"] = {{"test", name}, {"inputs", inputs},
                         {"contraction", perturbed_json(p)}};
    if (!p.note.empty()) report["warnings"].push_back(p.note);
    state.output = report.dump(2) + "\n";
  };

  auto* small_cmd = perturb_cmd->add_subcommand(
      "small", "bounded Hamiltonian perturbation test");
  small_cmd->add_option("--k", pk, "base prefactor K")->required();
  small_cmd->add_option("--gamma", pgamma, "base rate")->required();
  small_cmd->add_option("--vmax", pvmax, "sup norm of the drive")->required();
  add_out_option(small_cmd, state);
  small_cmd->callback([&] {
    perturb_report("small",
                   {{"K", pk}, {"gamma", pgamma}, {"vmax", pvmax}},
                   small_drive_check({pk, pgamma}, pvmax));
  });

  auto* slow_cmd = perturb_cmd->add_subcommand(
      "slow", "slow time-dependence test from frozen-time constants");
  slow_cmd->add_option("--k", pk, "frozen-time prefactor K0")->required();
  slow_cmd->add_option("--gamma", pgamma, "frozen-time rate")->required();
  slow_cmd->add_option("--hdot", phdot, "sup norm of dH/dt")->required();
  add_out_option(slow_cmd, state);
  slow_cmd->callback([&] {
    perturb_report("slow",
                   {{"K0", pk}, {"gamma0", pgamma}, {"hdot", phdot}},
                   slow_drive_check({pk, pgamma}, phdot));
  });

  auto* lemma_cmd = perturb_cmd->add_subcommand(
      "lemma", "direct perturbed-rate formula for a 1->1 norm bound");
  lemma_cmd->add_option("--k", pk, "base prefactor K")->required();
  lemma_cmd->add_option("--gamma", pgamma, "base rate")->required();
  lemma_cmd->add_option("--delta", pdelta, "1->1 norm of the perturbation")
      ->required();
  add_out_option(lemma_cmd, state);
  lemma_cmd->callback([&] {
    perturb_report("lemma",
                   {{"K", pk}, {"gamma", pgamma}, {"delta", pdelta}},
                   perturbed_rate({pk, pgamma}, pdelta));
  });

  auto* avg_cmd = perturb_cmd->add_subcommand(
      "average", "window-averaged perturbation test");
  avg_cmd->add_option("--k", pk, "base prefactor K")->required();
  avg_cmd->add_option("--gamma", pgamma, "base rate")->required();
  avg_cmd->add_option("--horizon", phorizon, "window length T")->required();
  avg_cmd->add_option("--avg", pavg, "windowed average perturbation size")
      ->required();
  add_out_option(avg_cmd, state);
  avg_cmd->callback([&] {
    TimeAverageResult res = time_average_check({pk, pgamma}, pavg, phorizon);
    json report = make_report(state.echo, fnv1a(state.echo));
    report["results"] = {
        {"test", "average"},
        {"inputs",
         {{"K", pk}, {"gamma", pgamma}, {"horizon", phorizon}, {"avg", pavg}}},
        {"pass", res.pass},
        {"concrete", res.concrete},
        {"K_D", res.K_D},
        {"gamma_D", res.gamma_D}};
    if (!res.note.empty()) report["warnings"].push_back(res.note);
    state.output = report.dump(2) + "\n";
  });

  // scenario
  auto* scenario_cmd =
      app.add_subcommand("scenario", "built-in models and experiments");
  scenario_cmd->require_subcommand(1);

  double sc_t_end = 50.0, sc_dt = 1e-2;
  int sc_points = 201;
  auto* ce1_cmd = scenario_cmd->add_subcommand(
      "ce1", "two-qubit model whose kernel degenerates under a Hamiltonian");
  ce1_cmd->add_option("--t-end", sc_t_end, "final time");
  ce1_cmd->add_option("--dt", sc_dt, "base integrator step");
  ce1_cmd->add_option("--points", sc_points, "grid points");
  add_out_option(ce1_cmd, state);
  ce1_cmd->callback([&] {
    std::vector<double> grid = linspace(0.0, sc_t_end, sc_points);
    const Matrix obs = kron(Matrix::Identity(2, 2), pauli_z());
    std::vector<Matrix> initials{ket_density("+1"), ket_density("+0")};
    PropagatorOptions opts;
    opts.dt = sc_dt;
    Trajectory no_h =
        observable_trajectory(ce1_model(false), initials, obs, grid, opts);
    Trajectory with_h =
        observable_trajectory(ce1_model(true), initials, obs, grid, opts);
    state.output = csv_table(
        {"t", "no_h_plus1", "no_h_plus0", "h_plus1", "h_plus0"},
        {grid, no_h.observables.at("state0"), no_h.observables.at("state1"),
         with_h.observables.at("state0"), with_h.observables.at("state1")});
  });

  double ce2_t_end = 20.0, ce2_r = 3.0, ce2_c = 2.0, ce2_dt = 0.2;
  int ce2_points = 201;
  auto* ce2_cmd = scenario_cmd->add_subcommand(
      "ce2", "gapped at every frozen time yet not contractive");
  ce2_cmd->add_option("--t-end", ce2_t_end, "final time");
  ce2_cmd->add_option("--r", ce2_r, "drive exponent (> 2)");
  ce2_cmd->add_option("--c", ce2_c, "drive speed (> 0)");
  ce2_cmd->add_option("--dt", ce2_dt, "base step, scaled by the drive");
  ce2_cmd->add_option("--points", ce2_points, "grid points");
  add_out_option(ce2_cmd, state);
  ce2_cmd->callback([&] {
    LindbladModel model = ce2_model(ce2_r, ce2_c);
    PropagatorOptions opts;
    opts.scheme = Scheme::RK4;
    opts.dt = ce2_dt;
    opts.tol_state = 1e-6;
    std::vector<double> grid = linspace(0.0, ce2_t_end, ce2_points);
    std::vector<double> series = contraction_envelope(
        model, ket_density("+1"), ket_density("+0"), grid, opts);
    state.output = csv_table({"t", "trace_norm"}, {grid, series});
  });

  double dep_gamma = 1.0, dep_t_end = 3.0;
  int dep_restarts = 64;
  std::uint64_t dep_seed = 0;
  auto* dep_cmd = scenario_cmd->add_subcommand(
      "depolarizing", "certified qubit depolarizing channel");
  dep_cmd->add_option("--gamma", dep_gamma, "depolarizing rate");
  dep_cmd->add_option("--t-end", dep_t_end, "envelope horizon");
  dep_cmd->add_option("--restarts", dep_restarts, "optimizer restarts");
  dep_cmd->add_option("--seed", dep_seed, "random seed");
  add_out_option(dep_cmd, state);
  dep_cmd->callback([&] {
    LindbladModel model = depolarizing_model(dep_gamma);
    ContractionCertificate cert = certify(model.jumps, dep_restarts, dep_seed);
    std::vector<double> grid = linspace(0.0, dep_t_end, 31);
    std::vector<double> series = contraction_envelope(
        model, ket_density("0"), ket_density("1"), grid, {});
    double max_rel_dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double expected = 2.0 * std::exp(-4.0 * dep_gamma * grid[i]);
      max_rel_dev = std::max(max_rel_dev,
                             std::abs(series[i] - expected) / expected);
    }
    json report = make_report(state.echo, fnv1a(state.echo));
    report["results"] = {{"certificate", certificate_json(cert)},
                         {"envelope_max_rel_dev", max_rel_dev},
                         {"gamma", dep_gamma}};
    for (const std::string& n : cert.notes) report["warnings"].push_back(n);
    state.output = report.dump(2) + "\n";
  });

  double l3_alpha = 1.0, l3_eta = 1.0;
  auto* l3_cmd = scenario_cmd->add_subcommand(
      "ladder3", "three-level ladder certificate constants");
  l3_cmd->add_option("--alpha", l3_alpha, "upper coupling");
  l3_cmd->add_option("--eta", l3_eta, "jump rate");
  add_out_option(l3_cmd, state);
  l3_cmd->callback([&] {
    const double mu2 = ladder_mu2(make_ladder_spec(3, {1.0, l3_alpha}, l3_eta));
    json report = make_report(state.echo, fnv1a(state.echo));
    report["results"] = {
        {"alpha", l3_alpha},
        {"eta", l3_eta},
        {"mu2", mu2},
        {"c_alpha", c_alpha(l3_alpha)},
        {"positive_window",
         json::array({std::sqrt(3.0) - std::sqrt(2.0),
                      std::sqrt(3.0) + std::sqrt(2.0)})}};
    state.output = report.dump(2) + "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    emit(state.out_path, state.output);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace lindblad
