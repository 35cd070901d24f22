#pragma once

#include <string>

#include "lindblad/ladder.hpp"
#include "lindblad/operators.hpp"

namespace lindblad {

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_minus();  // |0><1|
Matrix sigma_plus();   // |1><0|

// Column vector for a ket string over {'0','1','+','-'}, one qubit per
// character, e.g. "+1" -> |+> (x) |1>.
Vector ket(const std::string& label);
Matrix ket_density(const std::string& label);

// Two-qubit system with jumps {(sz + 2 s-) (x) I, |1><1| (x) s-, |1><1| (x) s+}.
// Without a Hamiltonian the fixed point is unique; adding sy (x) I makes the
// kernel four-dimensional.
JumpSet ce1_jumps();
LindbladModel ce1_model(bool with_hamiltonian);
Matrix ce1_sigma_infinity();  // (1/14) [[6,-2],[-2,1]] (x) I

// Same jumps with H(t) = (sy + cos(phi) sx + sin(phi) sy) (x) I,
// phi(t) = 2 pi (1 + c t)^r. Spectrally gapped at every frozen phase yet not
// exponentially contractive.
LindbladModel ce2_model(double r = 3.0, double c = 2.0);
// Trace-norm floor 2 - (1/(pi r c)) (9/(c (r-2)) + 4) for orthogonal initial
// pure states.
double ce2_envelope_floor(double r = 3.0, double c = 2.0);

LindbladModel depolarizing_model(double gamma = 1.0);

// Three-level ladder jump |0><1| + alpha |1><2| at rate eta, no Hamiltonian.
LindbladModel ladder3_model(double alpha = 1.0, double eta = 1.0);

// Jumps {sqrt(eps) |i><j| : i, j} acting as x -> eps (tr(x) I - d x).
JumpSet erasure_jumps(Eigen::Index d, double eps);

}  // namespace lindblad
