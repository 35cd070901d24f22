#include "lindblad/operators.hpp"

#include <cmath>

namespace lindblad {

namespace {

constexpr Complex kI{0.0, 1.0};

double scale_of(const Matrix& x) { return std::max(1.0, x.norm()); }

void require_square(const Matrix& x, const char* what) {
  if (x.rows() != x.cols())
    throw std::invalid_argument(std::string(what) + ": matrix not square");
}

void require_dim(const Matrix& x, Eigen::Index d, const char* what) {
  if (x.rows() != d || x.cols() != d)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

bool is_hermitian(const Matrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return (x - x.adjoint()).norm() <= tol * scale_of(x);
}

bool is_traceless(const Matrix& x, double tol) {
  return std::abs(x.trace()) <= tol * scale_of(x);
}

bool is_psd(const Matrix& x, double tol) {
  if (!is_hermitian(x, tol)) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es((x + x.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff() >= -tol * scale_of(x);
}

JumpSet make_jump_set(Eigen::Index dim, std::vector<Matrix> jumps) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("make_jump_set: dim out of range");
  for (const auto& l : jumps) {
    require_square(l, "make_jump_set");
    require_dim(l, dim, "make_jump_set");
  }
  return JumpSet{dim, std::move(jumps)};
}

bool all_traceless(const JumpSet& jumps, double tol) {
  for (const auto& l : jumps.jumps)
    if (!is_traceless(l, tol)) return false;
  return true;
}

HamiltonianSchedule HamiltonianSchedule::zero(Eigen::Index dim) {
  HamiltonianSchedule h;
  h.kind = ScheduleKind::Zero;
  h.dim = dim;
  return h;
}

HamiltonianSchedule HamiltonianSchedule::make_constant(Matrix h0) {
  require_square(h0, "HamiltonianSchedule");
  if (!is_hermitian(h0))
    throw std::invalid_argument("HamiltonianSchedule: H not Hermitian");
  HamiltonianSchedule h;
  h.kind = ScheduleKind::Constant;
  h.dim = h0.rows();
  h.constant = std::move(h0);
  return h;
}

HamiltonianSchedule HamiltonianSchedule::piecewise(
    std::vector<double> breakpoints, std::vector<Matrix> segments) {
  if (segments.empty() || breakpoints.size() != segments.size())
    throw std::invalid_argument(
        "HamiltonianSchedule: need one breakpoint per segment");
  for (size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument(
          "HamiltonianSchedule: breakpoints not ascending");
  HamiltonianSchedule h;
  h.kind = ScheduleKind::PiecewiseConstant;
  h.dim = segments[0].rows();
  for (const auto& s : segments) {
    require_dim(s, h.dim, "HamiltonianSchedule");
    if (!is_hermitian(s))
      throw std::invalid_argument("HamiltonianSchedule: segment not Hermitian");
  }
  h.breakpoints = std::move(breakpoints);
  h.segments = std::move(segments);
  return h;
}

HamiltonianSchedule HamiltonianSchedule::phi_drive(double c, double r,
                                                   Matrix h_static,
                                                   Matrix h_cos, Matrix h_sin) {
  if (!(c > 0.0) || !(r > 2.0))
    throw std::invalid_argument("HamiltonianSchedule: need c > 0 and r > 2");
  HamiltonianSchedule h;
  h.kind = ScheduleKind::PhiDrive;
  h.dim = h_static.rows();
  for (const Matrix* m : {&h_static, &h_cos, &h_sin}) {
    require_dim(*m, h.dim, "HamiltonianSchedule");
    if (!is_hermitian(*m))
      throw std::invalid_argument("HamiltonianSchedule: base not Hermitian");
  }
  h.c = c;
  h.r = r;
  h.h_static = std::move(h_static);
  h.h_cos = std::move(h_cos);
  h.h_sin = std::move(h_sin);
  return h;
}

Matrix HamiltonianSchedule::evaluate(double t) const {
  switch (kind) {
    case ScheduleKind::Zero:
      return Matrix::Zero(dim, dim);
    case ScheduleKind::Constant:
      return constant;
    case ScheduleKind::PiecewiseConstant: {
      size_t i = 0;
      while (i + 1 < breakpoints.size() && t >= breakpoints[i + 1]) ++i;
      return segments[i];
    }
    case ScheduleKind::PhiDrive: {
      double p = phi(t);
      return h_static + std::cos(p) * h_cos + std::sin(p) * h_sin;
    }
  }
  throw std::logic_error("HamiltonianSchedule: bad kind");
}

double HamiltonianSchedule::phi(double t) const {
  if (kind != ScheduleKind::PhiDrive)
    throw std::invalid_argument("phi: schedule has no drive phase");
  return 2.0 * M_PI * std::pow(1.0 + c * t, r);
}

double HamiltonianSchedule::drive_speed(double t) const {
  if (kind != ScheduleKind::PhiDrive) return 0.0;
  return std::abs(2.0 * M_PI * r * c * std::pow(1.0 + c * t, r - 1.0));
}

bool HamiltonianSchedule::time_dependent() const {
  return kind == ScheduleKind::PiecewiseConstant ||
         kind == ScheduleKind::PhiDrive;
}

LindbladModel make_model(JumpSet jumps, HamiltonianSchedule hamiltonian) {
  if (hamiltonian.dim != jumps.dim)
    throw std::invalid_argument("make_model: dimension mismatch");
  return LindbladModel{jumps.dim, std::move(jumps), std::move(hamiltonian)};
}

std::pair<JumpSet, Matrix> normalize_jumps(const JumpSet& jumps,
                                           const Matrix& h) {
  const Eigen::Index d = jumps.dim;
  require_dim(h, d, "normalize_jumps");
  if (!is_hermitian(h))
    throw std::invalid_argument("normalize_jumps: H not Hermitian");
  Matrix id = Matrix::Identity(d, d);
  Matrix shift = Matrix::Zero(d, d);
  std::vector<Matrix> out;
  out.reserve(jumps.jumps.size());
  for (const auto& l : jumps.jumps) {
    Complex tr = l.trace();
    out.push_back(l - (tr / static_cast<double>(d)) * id);
    shift += (kI / (2.0 * static_cast<double>(d))) *
             (std::conj(tr) * l - tr * l.adjoint());
  }
  return {JumpSet{d, std::move(out)}, h + shift};
}

Matrix dissipator_apply(const JumpSet& jumps, const Matrix& x) {
  require_dim(x, jumps.dim, "dissipator_apply");
  Matrix out = Matrix::Zero(jumps.dim, jumps.dim);
  for (const auto& l : jumps.jumps) {
    Matrix ldl = l.adjoint() * l;
    out += l * x * l.adjoint() - 0.5 * (ldl * x + x * ldl);
  }
  return out;
}

Matrix adjoint_dissipator_apply(const JumpSet& jumps, const Matrix& x) {
  require_dim(x, jumps.dim, "adjoint_dissipator_apply");
  Matrix out = Matrix::Zero(jumps.dim, jumps.dim);
  for (const auto& l : jumps.jumps) {
    Matrix ldl = l.adjoint() * l;
    out += l.adjoint() * x * l - 0.5 * (ldl * x + x * ldl);
  }
  return out;
}

Matrix lindbladian_apply(const LindbladModel& model, double t,
                         const Matrix& x) {
  Matrix h = model.hamiltonian.evaluate(t);
  return -kI * (h * x - x * h) + dissipator_apply(model.jumps, x);
}

Norms operator_norms(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x);
  const auto& s = svd.singularValues();
  Norms n;
  n.trace = s.sum();
  n.frobenius = std::sqrt(s.array().square().sum());
  n.spectral = s.size() > 0 ? s(0) : 0.0;
  return n;
}

double trace_norm(const Matrix& x) {
  if (is_hermitian(x, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((x + x.adjoint()) / 2.0);
    return es.eigenvalues().array().abs().sum();
  }
  return operator_norms(x).trace;
}

DriveSize drive_size(const Matrix& h) {
  if (!is_hermitian(h))
    throw std::invalid_argument("drive_size: H not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) / 2.0);
  const auto& ev = es.eigenvalues();
  DriveSize s;
  s.raw = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  s.shifted = (ev.maxCoeff() - ev.minCoeff()) / 2.0;
  return s;
}

}  // namespace lindblad
