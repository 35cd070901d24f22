#pragma once

#include "lindblad/operators.hpp"

namespace lindblad {

// Single-jump lowering operator sqrt(eta) * sum_j alpha_j |j-1><j|.
// Complex coefficients reduce to |alpha_j| by a diagonal-unitary gauge, so
// only positive reals are stored.
struct LadderSpec {
  Eigen::Index d = 0;
  std::vector<double> alphas;  // alpha_1 .. alpha_{d-1}, all > 0
  double eta = 1.0;
};

LadderSpec make_ladder_spec(Eigen::Index d, std::vector<double> alphas,
                            double eta = 1.0);

inline constexpr Eigen::Index kMaxLadderDim = 16;

JumpSet ladder_jump(const LadderSpec& spec);

// The symmetrized projected dissipator of a ladder jump block-diagonalizes
// over matrix diagonals: one (d-l) x (d-l) tridiagonal block B_l per offset
// l, with the l = 0 block compressed by P = I - ones/d.
struct LadderBlocks {
  Eigen::MatrixXd pb0p;            // P B_0 P
  std::vector<Eigen::MatrixXd> b;  // B_1 .. B_{d-1}
};

LadderBlocks ladder_blocks(const LadderSpec& spec);

// mu2 from the block spectra: eig(P B_0 P) with the structural zero (all-ones
// kernel of P) removed, plus each eig(B_l), l >= 1, counted twice.
double ladder_mu2(const LadderSpec& spec);

// All d^2 - 1 block eigenvalues (structural zero removed), ascending.
std::vector<double> ladder_block_eigenvalues(const LadderSpec& spec);

enum class LadderFamily { HO, AM, UL };

// HO: alpha_j = sqrt(gamma j); AM: alpha_j = sqrt(gamma j (d-j)); UL: sqrt(gamma).
LadderSpec family_spec(LadderFamily family, Eigen::Index d, double gamma);

struct FamilyScanRow {
  Eigen::Index d = 0;
  double mu2 = 0.0;
};

std::vector<FamilyScanRow> family_scan(LadderFamily family, Eigen::Index d_max,
                                       double gamma);

// Three-level certificate constant:
// min{ (2+a^2)/4 - (a/4) sqrt(4+a^2), (1+a^2)/2 - sqrt((1-a^2+a^4)/3) },
// positive exactly on (sqrt(3)-sqrt(2), sqrt(3)+sqrt(2)); equals
// -ladder_mu2(d=3, alphas=(1, a), eta=1) wherever positive.
double c_alpha(double alpha);

}  // namespace lindblad
