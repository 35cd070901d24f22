#include <doctest.h>

#include <cmath>
#include <random>

#include "lindblad/operators.hpp"
#include "lindblad/scenarios.hpp"
#include "lindblad/superop.hpp"

using namespace lindblad;

namespace {

Matrix random_matrix(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

Matrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  Matrix m = random_matrix(d, rng);
  return 0.5 * (m + m.adjoint());
}

// Entrywise action of the ce1 dissipator on a 4x4 matrix, written out
// independently of the Kronecker assembly.
Matrix ce1_entrywise(const Matrix& x) {
  auto e = [&x](int i, int j) { return x(i - 1, j - 1); };
  Matrix out(4, 4);
  out(0, 0) = e(1, 3) + e(3, 1) + 4.0 * e(3, 3);
  out(0, 1) = e(1, 4) + e(3, 2) + 4.0 * e(3, 4);
  out(0, 2) = -(2.0 * e(1, 1) + 9.0 * e(1, 3) + 6.0 * e(3, 3)) / 2.0;
  out(0, 3) = -(2.0 * e(1, 2) + 9.0 * e(1, 4) + 6.0 * e(3, 4)) / 2.0;
  out(1, 0) = e(4, 1) + e(2, 3) + 4.0 * e(4, 3);
  out(1, 1) = e(2, 4) + e(4, 2) + 4.0 * e(4, 4);
  out(1, 2) = -(2.0 * e(2, 1) + 9.0 * e(2, 3) + 6.0 * e(4, 3)) / 2.0;
  out(1, 3) = -(2.0 * e(2, 2) + 9.0 * e(2, 4) + 6.0 * e(4, 4)) / 2.0;
  out(2, 0) = -(2.0 * e(1, 1) + 9.0 * e(3, 1) + 6.0 * e(3, 3)) / 2.0;
  out(2, 1) = -(2.0 * e(1, 2) + 9.0 * e(3, 2) + 6.0 * e(3, 4)) / 2.0;
  out(2, 2) = -e(1, 3) - e(3, 1) - 5.0 * e(3, 3) + e(4, 4);
  out(2, 3) = -e(1, 4) - e(3, 2) - 5.0 * e(3, 4);
  out(3, 0) = -(2.0 * e(2, 1) + 9.0 * e(4, 1) + 6.0 * e(4, 3)) / 2.0;
  out(3, 1) = -(2.0 * e(2, 2) + 9.0 * e(4, 2) + 6.0 * e(4, 4)) / 2.0;
  out(3, 2) = -e(4, 1) - e(2, 3) - 5.0 * e(4, 3);
  out(3, 3) = -e(2, 4) - e(4, 2) - 5.0 * e(4, 4) + e(3, 3);
  return out;
}

}  // namespace

TEST_CASE("vec follows the column-stacking convention") {
  std::mt19937_64 rng(1);
  const Eigen::Index d = 3;
  Matrix a = random_matrix(d, rng), b = random_matrix(d, rng),
         x = random_matrix(d, rng);
  Vector lhs = vec(a * x * b);
  Vector rhs = kron(b.transpose(), a) * vec(x);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((unvec(vec(x), d) - x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("superoperator reproduces the direct generator action") {
  std::mt19937_64 rng(2);
  for (Eigen::Index d : {2, 3}) {
    JumpSet jumps =
        make_jump_set(d, {random_matrix(d, rng), random_matrix(d, rng)});
    LindbladModel model = make_model(
        jumps, HamiltonianSchedule::make_constant(random_hermitian(d, rng)));
    SuperMatrix s = build_superoperator(model, 0.0);
    for (int k = 0; k < 5; ++k) {
      Matrix x = random_matrix(d, rng);
      Matrix via_super = unvec(s * vec(x), d);
      Matrix direct = lindbladian_apply(model, 0.0, x);
      CHECK((via_super - direct).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("adjoint dissipator superoperator matches the direct form") {
  std::mt19937_64 rng(3);
  const Eigen::Index d = 3;
  JumpSet jumps = make_jump_set(d, {random_matrix(d, rng)});
  SuperMatrix s = adjoint_dissipator_superop(jumps);
  SuperMatrix sd = dissipator_superop(jumps);
  CHECK((s - sd.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  Matrix x = random_matrix(d, rng);
  CHECK((unvec(s * vec(x), d) - adjoint_dissipator_apply(jumps, x))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("ce1 dissipator agrees with its entrywise form") {
  std::mt19937_64 rng(4);
  SuperMatrix s = dissipator_superop(ce1_jumps());
  for (int k = 0; k < 20; ++k) {
    Matrix x = random_matrix(4, rng);
    Matrix via_super = unvec(s * vec(x), 4);
    CHECK((via_super - ce1_entrywise(x)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hermitian basis is orthonormal and complete") {
  for (Eigen::Index d : {2, 3, 4}) {
    HermitianBasis basis = make_hermitian_basis(d);
    REQUIRE(static_cast<Eigen::Index>(basis.elements.size()) == d * d);
    CHECK((basis.elements[0] -
           Matrix::Identity(d, d) / std::sqrt(double(d)))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    for (std::size_t a = 0; a < basis.elements.size(); ++a) {
      CHECK(is_hermitian(basis.elements[a]));
      if (a > 0) CHECK(is_traceless(basis.elements[a]));
      for (std::size_t b = a; b < basis.elements.size(); ++b) {
        const Complex ip =
            (basis.elements[a].adjoint() * basis.elements[b]).trace();
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("dtilde is symmetric with a vanishing identity sector") {
  std::mt19937_64 rng(5);
  const Eigen::Index d = 3;
  auto [jumps, h] = normalize_jumps(
      make_jump_set(d, {random_matrix(d, rng), random_matrix(d, rng)}),
      Matrix::Zero(d, d));
  (void)h;
  HermitianBasis basis = make_hermitian_basis(d);
  Eigen::MatrixXd m = build_dtilde(jumps, basis);
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(m.row(0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(m.col(0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("depolarizing dtilde is -4 gamma on the traceless sector") {
  const double gamma = 0.7;
  JumpSet jumps = depolarizing_model(gamma).jumps;
  Eigen::MatrixXd m = build_dtilde(jumps, make_hermitian_basis(2));
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  expected.bottomRightCorner(3, 3) = -4.0 * gamma * Eigen::MatrixXd::Identity(3, 3);
  CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unital commutator identity for dtilde") {
  // For unital sets, <x, Dtilde x> = -1/2 sum_j ||[Delta x, L_j]||_F^2.
  std::mt19937_64 rng(6);
  const Eigen::Index d = 3;
  std::vector<Matrix> hermitian_jumps{random_hermitian(d, rng),
                                      random_hermitian(d, rng)};
  auto [jumps, h] = normalize_jumps(make_jump_set(d, hermitian_jumps),
                                    Matrix::Zero(d, d));
  (void)h;
  HermitianBasis basis = make_hermitian_basis(d);
  Eigen::MatrixXd m = build_dtilde(jumps, basis);

  Matrix x = random_hermitian(d, rng);
  Eigen::VectorXd coords(d * d);
  for (Eigen::Index k = 0; k < d * d; ++k) {
    coords(k) =
        (basis.elements[static_cast<std::size_t>(k)].adjoint() * x).trace().real();
  }
  const double lhs = coords.dot(m * coords);
  Matrix dx = x - x.trace() / double(d) * Matrix::Identity(d, d);
  double rhs = 0.0;
  for (const Matrix& l : jumps.jumps) {
    rhs -= 0.5 * (dx * l - l * dx).squaredNorm();
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("fixed points of amplitude damping") {
  JumpSet jumps = make_jump_set(2, {sigma_minus()});
  SpectrumReport rep = fixed_points(dissipator_superop(jumps));
  REQUIRE(rep.fixed_point_count == 1);
  Matrix expected = ket_density("0");
  CHECK((rep.fixed_points[0] - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fixed points of the zero generator span all Hermitian matrices") {
  LindbladModel model = make_model(make_jump_set(2, {}),
                                   HamiltonianSchedule::zero(2));
  SpectrumReport rep = fixed_points(build_superoperator(model, 0.0));
  CHECK(rep.fixed_point_count == 4);
}

TEST_CASE("ce1 kernel with and without the Hamiltonian") {
  SpectrumReport without =
      fixed_points(build_superoperator(ce1_model(false), 0.0));
  REQUIRE(without.fixed_point_count == 1);
  CHECK((without.fixed_points[0] - ce1_sigma_infinity()).cwiseAbs().maxCoeff() <
        1e-9);

  SpectrumReport with_h =
      fixed_points(build_superoperator(ce1_model(true), 0.0));
  CHECK(with_h.fixed_point_count == 4);
}

TEST_CASE("spectral gap of known channels") {
  SpectrumReport ad = spectral_gap(dissipator_superop(make_jump_set(2, {sigma_minus()})));
  CHECK(ad.lambda2_defined);
  CHECK(ad.lambda2.real() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(ad.gap == doctest::Approx(0.5).epsilon(1e-12));

  SpectrumReport dep = spectral_gap(dissipator_superop(depolarizing_model(1.0).jumps));
  CHECK(dep.lambda2.real() == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(std::abs(dep.lambda2.imag()) < 1e-12);

  // all eigenvalues at zero: no eigenvalue clears the floor
  SpectrumReport zero = spectral_gap(SuperMatrix::Zero(4, 4));
  CHECK_FALSE(zero.lambda2_defined);
}

TEST_CASE("1->1 norm lower estimate on known superoperators") {
  SuperMatrix dep = dissipator_superop(depolarizing_model(1.0).jumps);
  NormEstimate est = estimate_1to1_norm(dep, 32, 0);
  CHECK(est.lower == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(est.saturated);

  // ||-i[sx, .]||_{1->1} = 2 ||sx||_inf
  NormEstimate comm = estimate_1to1_norm(commutator_superop(pauli_x()), 32, 1);
  CHECK(comm.lower == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("superoperator dimension guard") {
  // beyond kMaxDim the dense matrix is refused
  CHECK_THROWS_AS(make_jump_set(kMaxDim + 8, {}), std::invalid_argument);
}
