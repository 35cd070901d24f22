#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lindblad/operators.hpp"

namespace lindblad {

// Orthonormal pair attaining the reported minimum.
struct PairOptimum {
  double value = 0.0;
  Vector u, v;
  bool saturated = false;  // best value stable over the last half of restarts
};

// min over orthonormal (u, v) of sum_j (|<v|L_j|u>|^2 + |<v|L_j^dag|u>|^2)
PairOptimum rate_R(const JumpSet& jumps, int restarts = 64,
                   std::uint64_t seed = 0);

// Same with only the first term. Certificate rate is d * r.
PairOptimum rate_r(const JumpSet& jumps, int restarts = 64,
                   std::uint64_t seed = 0);

struct Mu2Result {
  double mu2 = 0.0;
  Matrix eigenvector;  // Hermitian traceless
  int multiplicity = 1;
};

// Largest eigenvalue of the symmetrized, identity-projected dissipator on the
// orthogonal complement of the identity. Jumps must be traceless.
Mu2Result rate_mu2(const JumpSet& jumps);

struct Classification {
  bool unital = false;
  bool antiherm_span = false;
  bool algebra_full_with_daggers = false;
  bool algebra_full_jumps_only = false;
  bool d2_contractive = false;  // d=2: some jump non-normal or pair non-commuting
  bool d3_sufficient = false;   // d=3: jumps alone generate the full algebra
};

Classification classify(const JumpSet& jumps);

enum class CertMethod { R, RTimesD, Mu2, Span, None };

std::string to_string(CertMethod m);

// Best Hamiltonian-independent contraction guarantee:
//   ||E_{t,s}(rho - sigma)||_1 <= K e^{-gamma |t-s|} ||rho - sigma||_1.
struct ContractionCertificate {
  CertMethod method = CertMethod::None;
  double gamma = 0.0;
  double K = 1.0;
  double R = 0.0;
  double r = 0.0;
  double mu2 = 0.0;
  int mu2_multiplicity = 1;
  PairOptimum R_witness, r_witness;
  Matrix mu2_eigenvector;
  Classification flags;
  std::vector<std::string> notes;
};

// Evaluates all certificates on the traceless-normalized jumps and keeps the
// method with the largest guaranteed rate (ties prefer K = 1). Values below
// the firing floor 1e-8 * sum_j ||L_j||_F^2 are treated as zero.
ContractionCertificate certify(const JumpSet& jumps, int restarts = 64,
                               std::uint64_t seed = 0);

}  // namespace lindblad
