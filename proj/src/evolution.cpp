#include "lindblad/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lindblad/parallel.hpp"
#include "lindblad/superop.hpp"

namespace lindblad {

namespace {

void require_state(const LindbladModel& model, const Matrix& x0) {
  if (x0.rows() != model.dim || x0.cols() != model.dim) {
    throw std::invalid_argument("state dimension does not match model");
  }
}

void require_grid(const std::vector<double>& grid) {
  if (grid.empty()) {
    throw std::invalid_argument("time grid is empty");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("time grid must be strictly ascending");
    }
  }
  if (grid.front() < 0.0) {
    throw std::invalid_argument("times must be nonnegative");
  }
}

// Precomputed superoperator pieces so driven steps avoid re-assembling
// Kronecker products: S(t) = fixed + cos(phi) s_cos + sin(phi) s_sin.
struct GeneratorParts {
  const HamiltonianSchedule* schedule = nullptr;
  SuperMatrix fixed;
  SuperMatrix s_cos, s_sin;  // PhiDrive only
  bool driven = false;

  explicit GeneratorParts(const LindbladModel& model)
      : schedule(&model.hamiltonian) {
    fixed = dissipator_superop(model.jumps);
    switch (schedule->kind) {
      case ScheduleKind::Zero:
        break;
      case ScheduleKind::Constant:
        fixed += commutator_superop(schedule->constant);
        break;
      case ScheduleKind::PiecewiseConstant:
        // Segment Hamiltonians are added per leg; legs are split at
        // breakpoints so each leg sees a constant generator.
        break;
      case ScheduleKind::PhiDrive:
        fixed += commutator_superop(schedule->h_static);
        s_cos = commutator_superop(schedule->h_cos);
        s_sin = commutator_superop(schedule->h_sin);
        driven = true;
        break;
    }
  }

  SuperMatrix at(double t) const {
    if (driven) {
      const double phi = schedule->phi(t);
      return fixed + std::cos(phi) * s_cos + std::sin(phi) * s_sin;
    }
    if (schedule->kind == ScheduleKind::PiecewiseConstant) {
      return fixed + commutator_superop(schedule->evaluate(t));
    }
    return fixed;
  }
};

// One fixed-dt pass over [s, t] for a driven generator; dt shrinks with the
// instantaneous drive speed.
Vector driven_pass(const GeneratorParts& gen, double s, double t, Vector v,
                   double dt, Scheme scheme) {
  double tau = s;
  while (tau < t) {
    double h = dt / (1.0 + gen.schedule->drive_speed(tau));
    if (tau + h >= t || t - (tau + h) < 1e-15 * std::max(1.0, t)) {
      h = t - tau;
    }
    if (scheme == Scheme::ExpStep) {
      SuperMatrix sm = gen.at(tau + 0.5 * h);
      v = (sm * h).exp() * v;
    } else {
      SuperMatrix s0 = gen.at(tau);
      SuperMatrix sm = gen.at(tau + 0.5 * h);
      SuperMatrix s1 = gen.at(tau + h);
      Vector k1 = s0 * v;
      Vector k2 = sm * (v + (0.5 * h) * k1);
      Vector k3 = sm * (v + (0.5 * h) * k2);
      Vector k4 = s1 * (v + h * k3);
      v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    tau += h;
  }
  return v;
}

// Exact product of segment exponentials for a constant or piecewise-constant
// generator over [s, t].
Vector exact_pass(const GeneratorParts& gen, double s, double t, Vector v) {
  const HamiltonianSchedule& sched = *gen.schedule;
  if (sched.kind != ScheduleKind::PiecewiseConstant) {
    return (gen.at(s) * (t - s)).exp() * v;
  }
  std::vector<double> cuts{s};
  for (double bp : sched.breakpoints) {
    if (bp > s && bp < t) cuts.push_back(bp);
  }
  cuts.push_back(t);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    v = (gen.at(a) * (b - a)).exp() * v;
  }
  return v;
}

Vector propagate_leg(const GeneratorParts& gen, double s, double t, Vector v,
                     const PropagatorOptions& opts, Eigen::Index d) {
  if (t < s) throw std::invalid_argument("propagation requires t >= s");
  if (t == s) return v;
  const bool stepped = gen.driven || opts.scheme == Scheme::RK4;
  if (!stepped) {
    return exact_pass(gen, s, t, std::move(v));
  }
  if (gen.schedule->kind == ScheduleKind::PiecewiseConstant) {
    // Keep RK4 stages inside one segment.
    std::vector<double> cuts{s};
    for (double bp : gen.schedule->breakpoints) {
      if (bp > s && bp < t) cuts.push_back(bp);
    }
    cuts.push_back(t);
    if (cuts.size() > 2) {
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        v = propagate_leg(gen, cuts[i], cuts[i + 1], std::move(v), opts, d);
      }
      return v;
    }
  }
  double dt = opts.dt;
  Vector coarse = driven_pass(gen, s, t, v, dt, opts.scheme);
  if (!opts.richardson) return coarse;
  for (int halvings = 0; halvings <= opts.max_halvings; ++halvings) {
    Vector fine = driven_pass(gen, s, t, v, 0.5 * dt, opts.scheme);
    const double err = trace_norm(unvec(coarse - fine, d));
    if (err <= opts.tol_state) return fine;
    coarse = std::move(fine);
    dt *= 0.5;
  }
  throw std::runtime_error("step refinement exhausted its halving budget");
}

}  // namespace

Matrix propagate(const LindbladModel& model, double s, double t,
                 const Matrix& x0, const PropagatorOptions& opts) {
  require_state(model, x0);
  if (!(opts.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (s < 0.0 || t < s) throw std::invalid_argument("need t >= s >= 0");
  GeneratorParts gen(model);
  Vector v = propagate_leg(gen, s, t, vec(x0), opts, model.dim);
  return unvec(v, model.dim);
}

Trajectory propagate_grid(const LindbladModel& model,
                          const std::vector<double>& grid, const Matrix& x0,
                          const PropagatorOptions& opts) {
  require_state(model, x0);
  require_grid(grid);
  if (!(opts.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  GeneratorParts gen(model);

  Trajectory traj;
  traj.times = grid;
  traj.states.reserve(grid.size());
  traj.states.push_back(x0);
  Vector v = vec(x0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    v = propagate_leg(gen, grid[i - 1], grid[i], std::move(v), opts, model.dim);
    traj.states.push_back(unvec(v, model.dim));
  }
  return traj;
}

std::vector<double> contraction_envelope(const LindbladModel& model,
                                         const Matrix& rho, const Matrix& sigma,
                                         const std::vector<double>& grid,
                                         const PropagatorOptions& opts) {
  require_state(model, rho);
  require_state(model, sigma);
  for (const Matrix* state : {&rho, &sigma}) {
    if (!is_hermitian(*state, 1e-8) || !is_psd(*state, 1e-8) ||
        std::abs(state->trace().real() - 1.0) > 1e-8 ||
        std::abs(state->trace().imag()) > 1e-8) {
      throw std::invalid_argument("envelope inputs must be density matrices");
    }
  }
  Trajectory traj = propagate_grid(model, grid, rho - sigma, opts);
  std::vector<double> series;
  series.reserve(grid.size());
  for (const Matrix& x : traj.states) {
    series.push_back(trace_norm(0.5 * (x + x.adjoint())));
  }
  return series;
}

Trajectory observable_trajectory(const LindbladModel& model,
                                 const std::vector<Matrix>& initials,
                                 const Matrix& obs,
                                 const std::vector<double>& grid,
                                 const PropagatorOptions& opts) {
  require_grid(grid);
  if (!is_hermitian(obs)) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  for (const Matrix& rho : initials) require_state(model, rho);

  std::vector<std::vector<double>> series(initials.size());
  parallel_for(static_cast<int>(initials.size()), [&](int i) {
    Trajectory t = propagate_grid(model, grid, initials[static_cast<std::size_t>(i)], opts);
    std::vector<double>& out = series[static_cast<std::size_t>(i)];
    out.reserve(grid.size());
    for (const Matrix& state : t.states) {
      out.push_back((obs.adjoint() * state).trace().real());
    }
  });

  Trajectory traj;
  traj.times = grid;
  for (std::size_t i = 0; i < series.size(); ++i) {
    traj.observables["state" + std::to_string(i)] = std::move(series[i]);
  }
  return traj;
}

RightDerivativeResult trace_norm_right_derivative(const LindbladModel& model,
                                                  double t, const Matrix& x) {
  (void)t;  // the Hamiltonian term drops out of the formula
  require_state(model, x);
  if (!is_hermitian(x)) {
    throw std::invalid_argument("right derivative needs Hermitian input");
  }
  const Eigen::Index d = model.dim;
  const Matrix xh = 0.5 * (x + x.adjoint());

  Eigen::SelfAdjointEigenSolver<Matrix> es(xh);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigensolve failed in right derivative");
  }

  RightDerivativeResult result;
  SignDecomposition& dec = result.decomposition;
  dec.eigenvalues = es.eigenvalues();
  dec.basis = es.eigenvectors();
  const double max_abs = dec.eigenvalues.cwiseAbs().maxCoeff();
  dec.kernel_threshold = 1e-8 * max_abs;

  std::vector<Eigen::Index> kernel;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double a = std::abs(dec.eigenvalues(k));
    if (a <= dec.kernel_threshold) kernel.push_back(k);
    // A magnitude within 10x of the threshold on either side makes the
    // kernel split unreliable.
    if (dec.kernel_threshold > 0.0 && a >= 0.1 * dec.kernel_threshold &&
        a <= 10.0 * dec.kernel_threshold) {
      dec.ambiguous = true;
    }
  }

  dec.signs.assign(static_cast<std::size_t>(d), 0);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (std::abs(dec.eigenvalues(k)) > dec.kernel_threshold) {
      dec.signs[static_cast<std::size_t>(k)] = dec.eigenvalues(k) > 0.0 ? 1 : -1;
    }
  }

  if (!kernel.empty() && !model.jumps.jumps.empty()) {
    // Rotate the kernel columns to diagonalize y = P_ker D(x) P_ker and read
    // signs off y's eigenvalues.
    const Matrix dx = dissipator_apply(model.jumps, xh);
    const Eigen::Index m = static_cast<Eigen::Index>(kernel.size());
    Matrix eker(d, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      eker.col(j) = dec.basis.col(kernel[static_cast<std::size_t>(j)]);
    }
    Matrix y = eker.adjoint() * dx * eker;
    Eigen::SelfAdjointEigenSolver<Matrix> ys(0.5 * (y + y.adjoint()));
    if (ys.info() != Eigen::Success) {
      throw std::runtime_error("kernel drift eigensolve failed");
    }
    const Matrix rotated = eker * ys.eigenvectors();
    const double y_tol = 1e-10 * std::max(1e-300, ys.eigenvalues().cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < m; ++j) {
      dec.basis.col(kernel[static_cast<std::size_t>(j)]) = rotated.col(j);
      const double yv = ys.eigenvalues()(j);
      if (std::abs(yv) > y_tol) {
        dec.signs[static_cast<std::size_t>(kernel[static_cast<std::size_t>(j)])] =
            yv > 0.0 ? 1 : -1;
      }
    }
  }

  double total = 0.0;
  for (const Matrix& l : model.jumps.jumps) {
    const Matrix lm = dec.basis.adjoint() * l * dec.basis;  // lm(a,b) = <e_a|L|e_b>
    for (Eigen::Index k = 0; k < d; ++k) {
      const double lam = std::abs(dec.eigenvalues(k));
      if (lam == 0.0) continue;
      for (Eigen::Index lidx = 0; lidx < d; ++lidx) {
        const double f =
            1.0 - double(dec.signs[static_cast<std::size_t>(k)] *
                         dec.signs[static_cast<std::size_t>(lidx)]);
        if (f == 0.0) continue;
        total += lam * f * std::norm(lm(lidx, k));
      }
    }
  }
  result.value = -total;
  return result;
}

}  // namespace lindblad
