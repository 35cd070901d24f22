#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lindblad {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Structural predicates compare against tol * max(1, ||x||_F).
inline constexpr double kStructuralTol = 1e-10;

// Dense d^2 x d^2 superoperator methods stop being reasonable past this.
inline constexpr Eigen::Index kMaxDim = 64;

bool is_hermitian(const Matrix& x, double tol = kStructuralTol);
bool is_traceless(const Matrix& x, double tol = kStructuralTol);
bool is_psd(const Matrix& x, double tol = kStructuralTol);

// Ordered jump operators sharing one dimension. May be empty.
struct JumpSet {
  Eigen::Index dim = 0;
  std::vector<Matrix> jumps;
};

JumpSet make_jump_set(Eigen::Index dim, std::vector<Matrix> jumps);

bool all_traceless(const JumpSet& jumps, double tol = kStructuralTol);

enum class ScheduleKind { Zero, Constant, PiecewiseConstant, PhiDrive };

// Time-dependent Hamiltonians are closed descriptions, not callables, so
// models stay serializable. Arbitrary drives are approximated by
// PiecewiseConstant. PhiDrive is
//   H(t) = h_static + cos(phi(t)) h_cos + sin(phi(t)) h_sin,
//   phi(t) = 2*pi*(1 + c t)^r,  c > 0, r > 2.
struct HamiltonianSchedule {
  ScheduleKind kind = ScheduleKind::Zero;
  Eigen::Index dim = 0;

  Matrix constant;  // Constant

  // PiecewiseConstant: segment i applies on [breakpoints[i], breakpoints[i+1]);
  // the last segment extends to +inf; times before breakpoints[0] use segment 0.
  std::vector<double> breakpoints;
  std::vector<Matrix> segments;

  double c = 0.0;  // PhiDrive
  double r = 0.0;
  Matrix h_static, h_cos, h_sin;

  static HamiltonianSchedule zero(Eigen::Index dim);
  static HamiltonianSchedule make_constant(Matrix h);
  static HamiltonianSchedule piecewise(std::vector<double> breakpoints,
                                       std::vector<Matrix> segments);
  static HamiltonianSchedule phi_drive(double c, double r, Matrix h_static,
                                       Matrix h_cos, Matrix h_sin);

  Matrix evaluate(double t) const;
  double phi(double t) const;          // PhiDrive only; throws otherwise
  double drive_speed(double t) const;  // |phi'(t)| for PhiDrive, 0 otherwise
  bool time_dependent() const;
};

struct LindbladModel {
  Eigen::Index dim = 0;
  JumpSet jumps;
  HamiltonianSchedule hamiltonian;
};

LindbladModel make_model(JumpSet jumps, HamiltonianSchedule hamiltonian);

// Shifts every jump to zero trace, L -> L - tr(L) I / d, and absorbs the
// induced commutator into H:
//   H -> H + (i / 2d) sum_j (conj(tr L_j) L_j - tr(L_j) L_j^dag).
// The generator's action is unchanged.
std::pair<JumpSet, Matrix> normalize_jumps(const JumpSet& jumps,
                                           const Matrix& h);

// sum_j (L_j X L_j^dag - 1/2 {L_j^dag L_j, X})
Matrix dissipator_apply(const JumpSet& jumps, const Matrix& x);

// Hilbert-Schmidt adjoint: sum_j (L_j^dag X L_j - 1/2 {L_j^dag L_j, X})
Matrix adjoint_dissipator_apply(const JumpSet& jumps, const Matrix& x);

// -i [H(t), X] + dissipator
Matrix lindbladian_apply(const LindbladModel& model, double t, const Matrix& x);

struct Norms {
  double trace = 0.0;
  double frobenius = 0.0;
  double spectral = 0.0;
};

Norms operator_norms(const Matrix& x);

// Schatten-1 norm; eigenvalue-based for Hermitian inputs, SVD otherwise.
double trace_norm(const Matrix& x);

// Spectral norm of a Hermitian drive, raw and after the optimal identity
// shift (lambda_max - lambda_min)/2. The shifted value is the tighter input
// for drive-size thresholds.
struct DriveSize {
  double raw = 0.0;
  double shifted = 0.0;
};

DriveSize drive_size(const Matrix& h);

}  // namespace lindblad
