#pragma once

#include "lindblad/operators.hpp"

namespace lindblad {

struct GeneratorSet {
  Eigen::Index dim = 0;
  std::vector<Matrix> generators;
};

GeneratorSet make_generator_set(Eigen::Index dim, std::vector<Matrix> generators);

// Dimension of the complex associative algebra generated by the set, found by
// iterating span closure under pairwise products (seeded with the identity).
// max_rounds = 0 picks an automatic bound; exceeding it without the rank
// stabilizing signals a rank-tolerance problem and throws.
int generated_algebra_dim(const GeneratorSet& g, int max_rounds = 0);

struct SpanResult {
  bool spans = false;
  // On false: an anti-Hermitian direction HS-orthogonal to the span;
  // of the form |u><v| - |v><u| when such a structured witness exists.
  Matrix witness;
};

// True when every anti-Hermitian matrix lies in the complex span of
// {L_j, L_j^dag} together with the identity. (The identity component of a
// jump never affects the dissipator, and the structured witnesses below are
// traceless, so adjoining I keeps the certificate implication intact.)
SpanResult spans_antihermitian(const JumpSet& jumps);

// Algebra generated by {L_j} and iH(t) + 1/2 sum_j L_j^dag L_j is full.
bool is_irreducible(const LindbladModel& model, double t);

}  // namespace lindblad
