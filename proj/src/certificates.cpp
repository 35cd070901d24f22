#include "lindblad/certificates.hpp"

#include <cmath>
#include <random>

#include "lindblad/algebra.hpp"
#include "lindblad/parallel.hpp"
#include "lindblad/superop.hpp"

namespace lindblad {

namespace {

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return std::mt19937_64(z ^ (z >> 31));
}

double pair_objective(const JumpSet& jumps, const Vector& u, const Vector& v,
                      bool with_daggers) {
  double f = 0.0;
  for (const auto& l : jumps.jumps) {
    f += std::norm(v.dot(l * u));
    if (with_daggers) f += std::norm(v.dot(l.adjoint() * u));
  }
  return f;
}

// Euclidean gradient of the objective with respect to (u*, v*).
void pair_gradient(const JumpSet& jumps, const Vector& u, const Vector& v,
                   bool with_daggers, Vector* gu, Vector* gv) {
  const Eigen::Index d = jumps.dim;
  *gu = Vector::Zero(d);
  *gv = Vector::Zero(d);
  for (const auto& l : jumps.jumps) {
    Complex a = v.dot(l * u);
    *gu += a * (l.adjoint() * v);
    *gv += std::conj(a) * (l * u);
    if (with_daggers) {
      Complex b = v.dot(l.adjoint() * u);
      *gu += b * (l * v);
      *gv += std::conj(b) * (l.adjoint() * u);
    }
  }
}

// Thin-QR retraction onto orthonormal 2-frames, with the R-diagonal sign
// fixed so the retraction is continuous.
void retract(Matrix* z) {
  Eigen::HouseholderQR<Matrix> qr(*z);
  Matrix q = qr.householderQ() * Matrix::Identity(z->rows(), 2);
  Matrix r = q.adjoint() * (*z);
  for (int c = 0; c < 2; ++c) {
    Complex rc = r(c, c);
    if (std::abs(rc) > 0.0) q.col(c) *= rc / std::abs(rc);
  }
  *z = q;
}

double descend(const JumpSet& jumps, bool with_daggers, Matrix z, Vector* u_out,
               Vector* v_out) {
  double f = pair_objective(jumps, z.col(0), z.col(1), with_daggers);
  double scale = 1.0;
  for (const auto& l : jumps.jumps) scale = std::max(scale, l.squaredNorm());
  for (int it = 0; it < 400; ++it) {
    Vector gu, gv;
    pair_gradient(jumps, z.col(0), z.col(1), with_daggers, &gu, &gv);
    Matrix g(z.rows(), 2);
    g.col(0) = gu;
    g.col(1) = gv;
    Matrix ztg = z.adjoint() * g;
    Matrix xi = g - z * (0.5 * (ztg + ztg.adjoint()));  // tangent projection
    double gn = xi.norm();
    if (gn <= 1e-11 * scale) break;
    double eta = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 50; ++bt) {
      Matrix trial = z - eta * xi;
      retract(&trial);
      double ft = pair_objective(jumps, trial.col(0), trial.col(1), with_daggers);
      if (ft <= f - 0.1 * eta * gn * gn) {
        z = trial;
        f = ft;
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }
  *u_out = z.col(0);
  *v_out = z.col(1);
  return f;
}

Matrix random_frame(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix z(d, 2);
  for (Eigen::Index i = 0; i < d; ++i)
    for (int c = 0; c < 2; ++c) z(i, c) = Complex(gauss(rng), gauss(rng));
  retract(&z);
  return z;
}

// Exhaustive Bloch-sphere grid for d = 2, where orthonormal pairs are
// parameterized by a single direction up to irrelevant phases.
void bloch_grid_min(const JumpSet& jumps, bool with_daggers, double* best,
                    Vector* u_best, Vector* v_best) {
  constexpr int kTheta = 181, kPhi = 361;
  for (int it = 0; it < kTheta; ++it) {
    double theta = M_PI * it / (kTheta - 1);
    double ct = std::cos(theta / 2), st = std::sin(theta / 2);
    for (int ip = 0; ip < kPhi; ++ip) {
      double phi = 2.0 * M_PI * ip / kPhi;
      Complex e{std::cos(phi), std::sin(phi)};
      Vector u(2), v(2);
      u << ct, e * st;
      v << -std::conj(e) * st, ct;
      double f = pair_objective(jumps, u, v, with_daggers);
      if (f < *best) {
        *best = f;
        *u_best = u;
        *v_best = v;
      }
    }
  }
}

PairOptimum minimize_pairs(const JumpSet& jumps, bool with_daggers,
                           int restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("rate: restarts >= 1");
  const Eigen::Index d = jumps.dim;
  if (d < 2)
    throw std::invalid_argument("rate: need dim >= 2 for orthonormal pairs");
  std::vector<double> values(restarts);
  std::vector<Vector> us(restarts), vs(restarts);
  parallel_for(restarts, [&](int rs) {
    auto rng = seeded_rng(seed, std::uint64_t(rs));
    values[rs] = descend(jumps, with_daggers, random_frame(d, rng), &us[rs], &vs[rs]);
  });
  PairOptimum opt;
  opt.value = values[0];
  opt.u = us[0];
  opt.v = vs[0];
  double best_half = 0.0;
  for (int rs = 0; rs < restarts; ++rs) {
    if (values[rs] < opt.value) {
      opt.value = values[rs];
      opt.u = us[rs];
      opt.v = vs[rs];
    }
    if (rs == restarts / 2 - 1) best_half = opt.value;
  }
  opt.saturated =
      restarts > 1 && best_half - opt.value <= 1e-8 * std::max(1.0, best_half);
  if (d == 2) {
    double gb = opt.value;
    Vector gu = opt.u, gv = opt.v;
    bloch_grid_min(jumps, with_daggers, &gb, &gu, &gv);
    if (gb < opt.value) {
      // refine the grid point; keep whichever is lower
      Matrix z(2, 2);
      z.col(0) = gu;
      z.col(1) = gv;
      Vector ru, rv;
      double rf = descend(jumps, with_daggers, z, &ru, &rv);
      if (rf < opt.value) {
        opt.value = rf;
        opt.u = ru;
        opt.v = rv;
      }
    }
    opt.saturated = true;  // grid closes the global-minimum gap at d = 2
  }
  return opt;
}

}  // namespace

PairOptimum rate_R(const JumpSet& jumps, int restarts, std::uint64_t seed) {
  return minimize_pairs(jumps, true, restarts, seed);
}

PairOptimum rate_r(const JumpSet& jumps, int restarts, std::uint64_t seed) {
  return minimize_pairs(jumps, false, restarts, seed);
}

Mu2Result rate_mu2(const JumpSet& jumps) {
  if (!all_traceless(jumps))
    throw std::invalid_argument(
        "rate_mu2: jumps not traceless; run normalize_jumps first");
  const Eigen::Index d = jumps.dim;
  const Eigen::Index n = d * d;
  Mu2Result res;
  if (jumps.jumps.empty()) {
    res.eigenvector = Matrix::Zero(d, d);
    res.multiplicity = int(n - 1);
    return res;
  }
  HermitianBasis basis = make_hermitian_basis(d);
  Eigen::MatrixXd dt = build_dtilde(jumps, basis);
  // Basis element 0 is I/sqrt(d), whose row and column vanish; the restriction
  // to the traceless sector is the trailing principal block.
  Eigen::MatrixXd block = dt.bottomRightCorner(n - 1, n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (block + block.transpose()));
  const auto& ev = es.eigenvalues();
  res.mu2 = ev(n - 2);
  Matrix x = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < n - 1; ++k)
    x += es.eigenvectors()(k, n - 2) * basis.elements[k + 1];
  res.eigenvector = x;
  double spread = std::max({1.0, std::abs(ev(0)), std::abs(ev(n - 2))});
  res.multiplicity = 0;
  for (Eigen::Index i = 0; i < n - 1; ++i)
    if (std::abs(ev(i) - res.mu2) <= 1e-9 * spread) ++res.multiplicity;
  return res;
}

Classification classify(const JumpSet& jumps) {
  const Eigen::Index d = jumps.dim;
  Classification c;

  Matrix defect = Matrix::Zero(d, d);
  double scale = 0.0;
  for (const auto& l : jumps.jumps) {
    defect += l * l.adjoint() - l.adjoint() * l;
    scale += l.squaredNorm();
  }
  c.unital = defect.norm() <= kStructuralTol * std::max(1.0, scale);

  c.antiherm_span = spans_antihermitian(jumps).spans;

  if (!jumps.jumps.empty()) {
    std::vector<Matrix> with_daggers = jumps.jumps;
    for (const auto& l : jumps.jumps) with_daggers.push_back(l.adjoint());
    c.algebra_full_with_daggers =
        generated_algebra_dim(make_generator_set(d, with_daggers)) == d * d;
    c.algebra_full_jumps_only =
        generated_algebra_dim(make_generator_set(d, jumps.jumps)) == d * d;
  }

  if (d == 2) {
    double tol = kStructuralTol * std::max(1.0, scale);
    for (const auto& l : jumps.jumps)
      if ((l * l.adjoint() - l.adjoint() * l).norm() > tol)
        c.d2_contractive = true;
    for (size_t i = 0; i < jumps.jumps.size() && !c.d2_contractive; ++i)
      for (size_t j = i + 1; j < jumps.jumps.size(); ++j)
        if ((jumps.jumps[i] * jumps.jumps[j] - jumps.jumps[j] * jumps.jumps[i])
                .norm() > tol) {
          c.d2_contractive = true;
          break;
        }
  }
  if (d == 3) c.d3_sufficient = c.algebra_full_jumps_only;
  return c;
}

std::string to_string(CertMethod m) {
  switch (m) {
    case CertMethod::R:
      return "R";
    case CertMethod::RTimesD:
      return "r_times_d";
    case CertMethod::Mu2:
      return "mu2";
    case CertMethod::Span:
      return "span";
    case CertMethod::None:
      return "none";
  }
  return "none";
}

ContractionCertificate certify(const JumpSet& jumps, int restarts,
                               std::uint64_t seed) {
  ContractionCertificate cert;
  // R, r and mu2 are invariant under the traceless shift (orthonormal pairs
  // never see the identity component), so normalizing first is harmless and
  // satisfies the mu2 precondition.
  auto [traceless, unused_h] =
      normalize_jumps(jumps, Matrix::Zero(jumps.dim, jumps.dim));
  if (!all_traceless(jumps))
    cert.notes.push_back("jumps were shifted traceless before certification");

  cert.flags = classify(traceless);
  double scale = 0.0;
  for (const auto& l : traceless.jumps) scale += l.squaredNorm();
  const double floor = 1e-8 * scale + 1e-12;

  cert.R_witness = rate_R(traceless, restarts, seed);
  cert.r_witness = rate_r(traceless, restarts, seed);
  Mu2Result mu = rate_mu2(traceless);
  cert.R = cert.R_witness.value;
  cert.r = cert.r_witness.value;
  cert.mu2 = mu.mu2;
  cert.mu2_multiplicity = mu.multiplicity;
  cert.mu2_eigenvector = mu.eigenvector;
  if (!cert.R_witness.saturated || !cert.r_witness.saturated)
    cert.notes.push_back("pair optimization not saturated; increase restarts");

  struct Candidate {
    CertMethod method;
    double gamma;
    double K;
  };
  std::vector<Candidate> fired;
  if (cert.R > floor) fired.push_back({CertMethod::R, cert.R, 1.0});
  if (double(jumps.dim) * cert.r > floor)
    fired.push_back({CertMethod::RTimesD, double(jumps.dim) * cert.r, 1.0});
  if (cert.mu2 < -floor)
    fired.push_back({CertMethod::Mu2, -cert.mu2, std::sqrt(double(jumps.dim))});

  for (const auto& cand : fired) {
    bool better = cand.gamma > cert.gamma * (1.0 + 1e-9);
    bool tie = std::abs(cand.gamma - cert.gamma) <=
               1e-9 * std::max(cand.gamma, cert.gamma);
    // ties keep the earlier (K = 1 preferred) method
    if (cert.method == CertMethod::None || (better && !tie)) {
      cert.method = cand.method;
      cert.gamma = cand.gamma;
      cert.K = cand.K;
    }
  }
  if (cert.method == CertMethod::None) {
    cert.gamma = 0.0;
    cert.K = 1.0;
    if (cert.flags.antiherm_span)
      cert.notes.push_back(
          "anti-Hermitian span holds but no quantitative rate fired");
  }
  return cert;
}

}  // namespace lindblad
