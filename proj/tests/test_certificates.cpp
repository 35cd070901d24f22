#include <doctest.h>

#include <cmath>
#include <random>

#include "lindblad/certificates.hpp"
#include "lindblad/operators.hpp"
#include "lindblad/scenarios.hpp"

using namespace lindblad;

namespace {

Matrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(n(rng), n(rng));
  return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST_CASE("pair rates of the depolarizing set") {
  JumpSet jumps = depolarizing_model(0.8).jumps;
  PairOptimum r = rate_r(jumps, 32, 0);
  PairOptimum big_r = rate_R(jumps, 32, 0);
  CHECK(r.value == doctest::Approx(1.6).epsilon(1e-9));   // 2 gamma
  CHECK(big_r.value == doctest::Approx(3.2).epsilon(1e-9));  // 4 gamma
  CHECK(r.saturated);
  CHECK(big_r.saturated);
  // witnesses are orthonormal pairs
  CHECK(std::abs(r.u.norm() - 1.0) < 1e-9);
  CHECK(std::abs(r.v.norm() - 1.0) < 1e-9);
  CHECK(std::abs(r.u.dot(r.v)) < 1e-9);
}

TEST_CASE("pair rates of amplitude damping") {
  JumpSet jumps = make_jump_set(2, {sigma_minus()});
  // <v|s-|u> can vanish while <v|s+|u> cannot simultaneously: R = 1/2, r = 0
  CHECK(rate_R(jumps, 32, 0).value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rate_r(jumps, 32, 0).value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("R equals 2r for Hermitian jumps") {
  std::mt19937_64 rng(23);
  for (Eigen::Index d : {2, 3}) {
    std::vector<Matrix> js{random_hermitian(d, rng), random_hermitian(d, rng)};
    JumpSet jumps = make_jump_set(d, js);
    const double r = rate_r(jumps, 48, 0).value;
    const double big_r = rate_R(jumps, 48, 0).value;
    CHECK(big_r == doctest::Approx(2.0 * r).epsilon(1e-6));
  }
}

TEST_CASE("mu2 of known dissipators") {
  Mu2Result dep = rate_mu2(depolarizing_model(1.0).jumps);
  CHECK(dep.mu2 == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(dep.multiplicity == 3);
  CHECK(is_hermitian(dep.eigenvector));
  CHECK(is_traceless(dep.eigenvector));

  Mu2Result ad = rate_mu2(make_jump_set(2, {sigma_minus()}));
  CHECK(ad.mu2 == doctest::Approx(-0.5).epsilon(1e-12));

  // traceless input required
  CHECK_THROWS_AS(rate_mu2(make_jump_set(2, {Matrix::Identity(2, 2)})),
                  std::invalid_argument);
}

TEST_CASE("classification flags on known sets") {
  Classification dep = classify(depolarizing_model(1.0).jumps);
  CHECK(dep.unital);
  CHECK(dep.antiherm_span);
  CHECK(dep.algebra_full_with_daggers);
  CHECK(dep.algebra_full_jumps_only);
  CHECK(dep.d2_contractive);

  Classification ad = classify(make_jump_set(2, {sigma_minus()}));
  CHECK_FALSE(ad.unital);
  CHECK_FALSE(ad.antiherm_span);
  CHECK(ad.algebra_full_with_daggers);  // {s-, s+} generate everything
  CHECK_FALSE(ad.algebra_full_jumps_only);
  CHECK(ad.d2_contractive);  // s- is not normal
}

TEST_CASE("certify picks the best constant and prefers K = 1") {
  ContractionCertificate dep = certify(depolarizing_model(1.0).jumps, 32, 0);
  CHECK(dep.gamma == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(dep.K == 1.0);
  // R = 4 ties r*d = 4 and mu2 = -4 with sqrt(2) prefactor; R keeps the tie
  CHECK(dep.method == CertMethod::R);

  ContractionCertificate ad = certify(make_jump_set(2, {sigma_minus()}), 32, 0);
  CHECK(ad.method == CertMethod::R);
  CHECK(ad.gamma == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(ad.K == 1.0);
}

TEST_CASE("certify on the erasure set uses r times d") {
  JumpSet jumps = erasure_jumps(3, 0.1);
  ContractionCertificate cert = certify(jumps, 32, 0);
  CHECK(cert.r == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(cert.R == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(cert.mu2 == doctest::Approx(-0.3).epsilon(1e-9));
  // candidates: R = 0.2, r d = 0.3, -mu2 = 0.3 with K = sqrt(3)
  CHECK(cert.method == CertMethod::RTimesD);
  CHECK(cert.gamma == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(cert.K == 1.0);
}

TEST_CASE("certify with no firing certificate reports none") {
  // single Hermitian jump on d = 3: R = r = 0 (shared eigenvectors), and
  // Dtilde has a nontrivial kernel (commuting directions), so mu2 = 0
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 1.0;
  diag(1, 1) = -1.0;
  ContractionCertificate cert = certify(make_jump_set(3, {diag}), 32, 0);
  CHECK(cert.method == CertMethod::None);
  CHECK(cert.gamma == 0.0);
  CHECK(cert.K == 1.0);
}

TEST_CASE("certify normalizes traced jumps first") {
  // L = I + s- acts like s- on traceless observables
  Matrix l = Matrix::Identity(2, 2) + sigma_minus();
  ContractionCertificate cert = certify(make_jump_set(2, {l}), 32, 0);
  CHECK(cert.gamma == doctest::Approx(0.5).epsilon(1e-6));
  bool noted = false;
  for (const std::string& n : cert.notes) {
    if (n.find("traceless") != std::string::npos) noted = true;
  }
  CHECK(noted);
}

TEST_CASE("ladder mu2 certificate at alpha = 1") {
  LindbladModel model = ladder3_model(1.0);
  ContractionCertificate cert = certify(model.jumps, 32, 0);
  // R and r vanish for a single ladder jump; mu2 fires
  CHECK(cert.method == CertMethod::Mu2);
  CHECK(cert.gamma == doctest::Approx(1.0 / (3.0 + std::sqrt(5.0))).epsilon(1e-9));
  CHECK(cert.K == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("independence pair: mu2 fails while r certifies") {
  // ladder (alpha = 4) plus weak erasure: mu2 > 0 but r = eps > 0
  std::vector<Matrix> jumps = ladder3_model(4.0).jumps.jumps;
  for (const Matrix& e : erasure_jumps(3, 0.1).jumps) jumps.push_back(e);
  JumpSet combined = make_jump_set(3, jumps);

  auto [traceless, h_shift] = normalize_jumps(combined, Matrix::Zero(3, 3));
  (void)h_shift;
  Mu2Result mu = rate_mu2(traceless);
  const double expected = (std::sqrt(964.0 / 3.0) - 17.0) / 2.0 - 0.3;
  CHECK(mu.mu2 == doctest::Approx(expected).epsilon(1e-9));
  CHECK(mu.mu2 > 0.0);

  ContractionCertificate cert = certify(combined, 48, 0);
  CHECK(cert.r == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(cert.gamma > 0.0);
  CHECK(cert.K == 1.0);
}
