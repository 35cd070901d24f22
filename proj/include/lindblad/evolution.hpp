#pragma once

#include <map>
#include <string>
#include <vector>

#include "lindblad/operators.hpp"

namespace lindblad {

enum class Scheme { ExpStep, RK4 };

struct PropagatorOptions {
  Scheme scheme = Scheme::ExpStep;
  double dt = 1e-2;        // base step; scaled down by 1/(1 + drive speed)
  bool richardson = true;  // halve-step error estimate on driven legs
  double tol_state = 1e-8;
  int max_halvings = 8;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::map<std::string, std::vector<double>> observables;
};

// Evolve x0 from time s to time t. Constant and piecewise-constant
// generators are exponentiated exactly per segment; a phi drive steps with
// the midpoint generator (ExpStep) or classic RK4, step size
// dt / (1 + |phi'|). Richardson compares against a halved-step pass and
// refines until the trace-norm difference is below tol_state.
Matrix propagate(const LindbladModel& model, double s, double t,
                 const Matrix& x0, const PropagatorOptions& opts = {});

// States along an ascending time grid; x0 is the state at grid.front().
Trajectory propagate_grid(const LindbladModel& model,
                          const std::vector<double>& grid, const Matrix& x0,
                          const PropagatorOptions& opts = {});

// ||rho(t) - sigma(t)||_1 over the grid. Evolution is linear, so the
// difference is propagated as a single matrix.
std::vector<double> contraction_envelope(const LindbladModel& model,
                                         const Matrix& rho, const Matrix& sigma,
                                         const std::vector<double>& grid,
                                         const PropagatorOptions& opts = {});

// tr(obs * rho_i(t)) for each initial state, series keyed "state0",
// "state1", ... States are not retained. Initial states propagate in
// parallel.
Trajectory observable_trajectory(const LindbladModel& model,
                                 const std::vector<Matrix>& initials,
                                 const Matrix& obs,
                                 const std::vector<double>& grid,
                                 const PropagatorOptions& opts = {});

// Eigenstructure backing the trace-norm right derivative. Eigenvalues come
// from x; on the kernel (|lambda| <= kernel_threshold) the basis is rotated
// to also diagonalize the projected drift y = P_ker D(x) P_ker and signs are
// taken from y's eigenvalues (0 below y's own relative threshold).
struct SignDecomposition {
  Eigen::VectorXd eigenvalues;
  std::vector<int> signs;  // -1, 0, +1 per eigenvalue
  Matrix basis;            // columns e_k
  double kernel_threshold = 0.0;
  bool ambiguous = false;  // some |lambda_k| within 10x of the threshold
};

struct RightDerivativeResult {
  double value = 0.0;
  SignDecomposition decomposition;
};

// d/dt+ ||x(t)||_1 = -sum_{k,l} |lambda_k| (1 - s_k s_l) sum_j |<e_l|L_j|e_k>|^2.
// The Hamiltonian term drops, so the value depends on the jumps only.
RightDerivativeResult trace_norm_right_derivative(const LindbladModel& model,
                                                  double t, const Matrix& x);

}  // namespace lindblad
