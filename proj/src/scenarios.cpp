#include "lindblad/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "lindblad/superop.hpp"

namespace lindblad {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix eye2() { return Matrix::Identity(2, 2); }

}  // namespace

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Vector ket(const std::string& label) {
  if (label.empty()) throw std::invalid_argument("empty ket label");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Ones(1);
  for (char ch : label) {
    Vector q(2);
    switch (ch) {
      case '0': q << 1, 0; break;
      case '1': q << 0, 1; break;
      case '+': q << inv_sqrt2, inv_sqrt2; break;
      case '-': q << inv_sqrt2, -inv_sqrt2; break;
      default:
        throw std::invalid_argument(std::string("unknown ket symbol '") + ch +
                                    "' (use 0, 1, +, -)");
    }
    Vector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next.segment(2 * i, 2) = v(i) * q;
    }
    v = std::move(next);
  }
  return v;
}

Matrix ket_density(const std::string& label) {
  Vector v = ket(label);
  return v * v.adjoint();
}

JumpSet ce1_jumps() {
  const Matrix l1 = kron(pauli_z() + 2.0 * sigma_minus(), eye2());
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  const Matrix l2 = kron(p1, sigma_minus());
  const Matrix l3 = kron(p1, sigma_plus());
  return make_jump_set(4, {l1, l2, l3});
}

LindbladModel ce1_model(bool with_hamiltonian) {
  HamiltonianSchedule h =
      with_hamiltonian
          ? HamiltonianSchedule::make_constant(kron(pauli_y(), eye2()))
          : HamiltonianSchedule::zero(4);
  return make_model(ce1_jumps(), std::move(h));
}

Matrix ce1_sigma_infinity() {
  Matrix core(2, 2);
  core << 6, -2, -2, 1;
  return kron(core / 14.0, eye2());
}

LindbladModel ce2_model(double r, double c) {
  HamiltonianSchedule h = HamiltonianSchedule::phi_drive(
      c, r, kron(pauli_y(), eye2()), kron(pauli_x(), eye2()),
      kron(pauli_y(), eye2()));
  return make_model(ce1_jumps(), std::move(h));
}

double ce2_envelope_floor(double r, double c) {
  if (!(c > 0.0) || !(r > 2.0)) {
    throw std::invalid_argument("floor needs c > 0 and r > 2");
  }
  const double pi = std::acos(-1.0);
  return 2.0 - (9.0 / (c * (r - 2.0)) + 4.0) / (pi * r * c);
}

LindbladModel depolarizing_model(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const double s = std::sqrt(gamma);
  JumpSet jumps =
      make_jump_set(2, {s * pauli_x(), s * pauli_y(), s * pauli_z()});
  return make_model(std::move(jumps), HamiltonianSchedule::zero(2));
}

LindbladModel ladder3_model(double alpha, double eta) {
  JumpSet jump = ladder_jump(make_ladder_spec(3, {1.0, alpha}, eta));
  return make_model(std::move(jump), HamiltonianSchedule::zero(3));
}

JumpSet erasure_jumps(Eigen::Index d, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (d < 2 || d > kMaxDim) throw std::invalid_argument("bad erasure dimension");
  std::vector<Matrix> jumps;
  jumps.reserve(static_cast<std::size_t>(d * d));
  const double s = std::sqrt(eps);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = s;
      jumps.push_back(std::move(e));
    }
  }
  return make_jump_set(d, std::move(jumps));
}

}  // namespace lindblad
