#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lindblad/operators.hpp"

namespace lindblad {

// Superoperators act on column-stacked operators: vec(A X B) = (B^T (x) A) vec(X).
using SuperMatrix = Eigen::MatrixXcd;

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Eigen::Index d);

Matrix kron(const Matrix& a, const Matrix& b);

SuperMatrix commutator_superop(const Matrix& h);  // X -> -i [H, X]
SuperMatrix dissipator_superop(const JumpSet& jumps);
// X -> sum_j (L_j^dag X L_j - 1/2 {L_j^dag L_j, X})
SuperMatrix adjoint_dissipator_superop(const JumpSet& jumps);
SuperMatrix build_superoperator(const LindbladModel& model, double t);

// Orthonormal Hermitian basis under the Hilbert-Schmidt inner product;
// element 0 is I/sqrt(d), the rest are the generalized Gell-Mann matrices.
struct HermitianBasis {
  Eigen::Index dim = 0;
  std::vector<Matrix> elements;
};

HermitianBasis make_hermitian_basis(Eigen::Index d);

// Matrix of x -> Delta((D + D^dag)(x) / 2) with Delta the traceless projector,
// expressed in the given orthonormal Hermitian basis. Real symmetric up to
// roundoff; rows/columns of identity-direction elements vanish.
Eigen::MatrixXd dtilde_matrix(const JumpSet& jumps,
                              const std::vector<Matrix>& basis);

// Same, in make_hermitian_basis order. Jumps must be traceless
// (run normalize_jumps first).
Eigen::MatrixXd build_dtilde(const JumpSet& jumps, const HermitianBasis& basis);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;
  Complex lambda2{0.0, 0.0};
  double gap = 0.0;
  bool lambda2_defined = false;  // false when no eigenvalue clears the floor
  int fixed_point_count = 0;
  // Hermitian kernel elements; rescaled to trace 1 where the trace is nonzero.
  std::vector<Matrix> fixed_points;
  std::vector<std::string> notes;
};

// Kernel analysis of a constant-Lindbladian superoperator. A singular value
// below tol * sigma_max counts as kernel.
SpectrumReport fixed_points(const SuperMatrix& s, double tol = 1e-9);

// lambda2 = eigenvalue of largest real part among those with
// |lambda| > 1e-9 * ||S||_F; ties broken by larger |Im|, then index.
SpectrumReport spectral_gap(const SuperMatrix& s);

struct NormEstimate {
  double lower = 0.0;  // max over optimized pure inputs of ||S(psi psi^dag)||_1
  Vector psi;          // attaining input
  bool saturated = false;
  std::string note;
};

// Lower estimate of the 1->1 norm over Hermitian inputs. The extreme points
// of the Hermitian trace-norm ball are +/- rank-one projectors, so pure
// states suffice; each restart runs projected gradient ascent on the sphere.
NormEstimate estimate_1to1_norm(const SuperMatrix& s, int restarts = 64,
                                std::uint64_t seed = 0);

}  // namespace lindblad
