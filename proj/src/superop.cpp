#include "lindblad/superop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lindblad/parallel.hpp"

namespace lindblad {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Index side_of(const SuperMatrix& s) {
  auto n = s.rows();
  if (n != s.cols()) throw std::invalid_argument("superoperator not square");
  auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
  if (d * d != n)
    throw std::invalid_argument("superoperator size is not a square d^2");
  return d;
}

// lambda2 selection shared by fixed_points and spectral_gap. Eigenvalues at
// or below the magnitude floor never qualify; ties in Re broken by larger
// |Im|, then by position in the eigensolver output.
void fill_gap(SpectrumReport& rep, double floor) {
  Eigen::Index best = -1;
  for (Eigen::Index i = 0; i < Eigen::Index(rep.eigenvalues.size()); ++i) {
    const Complex& l = rep.eigenvalues[i];
    if (std::abs(l) <= floor) continue;
    if (best < 0) {
      best = i;
      continue;
    }
    const Complex& b = rep.eigenvalues[best];
    if (l.real() > b.real() ||
        (l.real() == b.real() && std::abs(l.imag()) > std::abs(b.imag())))
      best = i;
  }
  if (best >= 0) {
    rep.lambda2 = rep.eigenvalues[best];
    rep.gap = -rep.lambda2.real();
    rep.lambda2_defined = true;
  } else {
    rep.lambda2 = Complex{0.0, 0.0};
    rep.gap = 0.0;
    rep.lambda2_defined = false;
    rep.notes.push_back("no eigenvalue above the magnitude floor");
  }
}

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 scramble so (seed, stream) pairs decorrelate
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return std::mt19937_64(z ^ (z >> 31));
}

}  // namespace

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, Eigen::Index d) {
  if (v.size() != d * d) throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SuperMatrix commutator_superop(const Matrix& h) {
  Eigen::Index d = h.rows();
  Matrix id = Matrix::Identity(d, d);
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

SuperMatrix dissipator_superop(const JumpSet& jumps) {
  Eigen::Index d = jumps.dim;
  Matrix id = Matrix::Identity(d, d);
  SuperMatrix s = SuperMatrix::Zero(d * d, d * d);
  for (const auto& l : jumps.jumps) {
    Matrix ldl = l.adjoint() * l;
    s += kron(l.conjugate(), l) -
         0.5 * (kron(id, ldl) + kron(ldl.transpose(), id));
  }
  return s;
}

SuperMatrix adjoint_dissipator_superop(const JumpSet& jumps) {
  Eigen::Index d = jumps.dim;
  Matrix id = Matrix::Identity(d, d);
  SuperMatrix s = SuperMatrix::Zero(d * d, d * d);
  for (const auto& l : jumps.jumps) {
    Matrix ldl = l.adjoint() * l;
    s += kron(l.transpose(), l.adjoint()) -
         0.5 * (kron(id, ldl) + kron(ldl.transpose(), id));
  }
  return s;
}

SuperMatrix build_superoperator(const LindbladModel& model, double t) {
  if (model.dim > kMaxDim)
    throw std::invalid_argument("build_superoperator: dimension guard d <= 64");
  return commutator_superop(model.hamiltonian.evaluate(t)) +
         dissipator_superop(model.jumps);
}

HermitianBasis make_hermitian_basis(Eigen::Index d) {
  if (d < 1 || d > kMaxDim)
    throw std::invalid_argument("make_hermitian_basis: dim out of range");
  HermitianBasis basis;
  basis.dim = d;
  basis.elements.reserve(d * d);
  basis.elements.push_back(Matrix::Identity(d, d) / std::sqrt(double(d)));
  for (Eigen::Index k = 1; k < d; ++k) {
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < k; ++j) m(j, j) = 1.0;
    m(k, k) = -double(k);
    basis.elements.push_back(m / std::sqrt(double(k) * double(k + 1)));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      Matrix sym = Matrix::Zero(d, d);
      sym(i, j) = s;
      sym(j, i) = s;
      basis.elements.push_back(sym);
      Matrix asym = Matrix::Zero(d, d);
      asym(i, j) = kI * s;
      asym(j, i) = -kI * s;
      basis.elements.push_back(asym);
    }
  return basis;
}

Eigen::MatrixXd dtilde_matrix(const JumpSet& jumps,
                              const std::vector<Matrix>& basis) {
  const Eigen::Index d = jumps.dim;
  const Eigen::Index n = Eigen::Index(basis.size());
  const double dd = double(d);
  Matrix id = Matrix::Identity(d, d);
  auto project = [&](const Matrix& x) -> Matrix {
    return x - (x.trace() / dd) * id;
  };
  std::vector<Matrix> images(n);
  for (Eigen::Index b = 0; b < n; ++b) {
    Matrix x = project(basis[b]);
    Matrix sym = 0.5 * (dissipator_apply(jumps, x) +
                        adjoint_dissipator_apply(jumps, x));
    images[b] = project(sym);
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      m(a, b) = (basis[a].adjoint() * images[b]).trace().real();
  return m;
}

Eigen::MatrixXd build_dtilde(const JumpSet& jumps, const HermitianBasis& basis) {
  if (basis.dim != jumps.dim)
    throw std::invalid_argument("build_dtilde: dimension mismatch");
  if (Eigen::Index(basis.elements.size()) != jumps.dim * jumps.dim)
    throw std::invalid_argument("build_dtilde: incomplete basis");
  if (!all_traceless(jumps))
    throw std::invalid_argument(
        "build_dtilde: jumps not traceless; run normalize_jumps first");
  return dtilde_matrix(jumps, basis.elements);
}

SpectrumReport fixed_points(const SuperMatrix& s, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("fixed_points: tol <= 0");
  const Eigen::Index d = side_of(s);
  SpectrumReport rep;

  Eigen::ComplexEigenSolver<SuperMatrix> es(s);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    rep.eigenvalues.push_back(es.eigenvalues()(i));
  fill_gap(rep, 1e-9 * s.norm());

  Eigen::BDCSVD<SuperMatrix> svd(s, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < tol * smax || smax == 0.0) kernel.push_back(i);
  rep.fixed_point_count = int(kernel.size());
  if (kernel.empty()) return rep;

  // The kernel of a Lindbladian superoperator is dagger-closed, so it has a
  // real-coordinate description in a Hermitian basis: split each null vector
  // into Hermitian and anti-Hermitian parts and re-orthonormalize.
  HermitianBasis hb = make_hermitian_basis(d);
  Eigen::MatrixXd coords(d * d, 2 * kernel.size());
  Eigen::Index col = 0;
  for (Eigen::Index k : kernel) {
    Matrix x = unvec(svd.matrixV().col(k), d);
    Matrix h1 = 0.5 * (x + x.adjoint());
    Matrix h2 = (x - x.adjoint()) / (2.0 * kI);
    for (Eigen::Index a = 0; a < d * d; ++a) {
      coords(a, col) = (hb.elements[a].adjoint() * h1).trace().real();
      coords(a, col + 1) = (hb.elements[a].adjoint() * h2).trace().real();
    }
    col += 2;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> csvd(coords, Eigen::ComputeFullU);
  const auto& cs = csvd.singularValues();
  int hrank = 0;
  for (Eigen::Index i = 0; i < cs.size(); ++i)
    if (cs(i) > 1e-9 * cs(0)) ++hrank;
  if (hrank != rep.fixed_point_count) {
    rep.notes.push_back("kernel is not dagger-closed; reporting " +
                        std::to_string(hrank) + " Hermitian directions");
  }
  for (int k = 0; k < std::min(hrank, rep.fixed_point_count); ++k) {
    Matrix x = Matrix::Zero(d, d);
    for (Eigen::Index a = 0; a < d * d; ++a)
      x += csvd.matrixU()(a, k) * hb.elements[a];
    Complex tr = x.trace();
    if (std::abs(tr) > 1e-8) {
      x /= tr;
      if (!is_psd(x, 1e-8))
        rep.notes.push_back("trace-1 representative " + std::to_string(k) +
                            " is not positive semidefinite");
    }
    rep.fixed_points.push_back(std::move(x));
  }
  return rep;
}

SpectrumReport spectral_gap(const SuperMatrix& s) {
  side_of(s);
  SpectrumReport rep;
  Eigen::ComplexEigenSolver<SuperMatrix> es(s);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    rep.eigenvalues.push_back(es.eigenvalues()(i));
  fill_gap(rep, 1e-9 * s.norm());
  return rep;
}

namespace {

double pure_input_norm(const SuperMatrix& s, const Vector& psi, Eigen::Index d) {
  Matrix rho = psi * psi.adjoint();
  return trace_norm(unvec(s * vec(rho), d));
}

// One ascent run from psi0. The objective psi -> ||S(psi psi^dag)||_1 is
// smooth wherever the output has no zero singular values; the trace-norm
// subgradient U V^dag gives the ascent direction through the chain rule.
double ascend(const SuperMatrix& s, Vector psi, Eigen::Index d, Vector* out) {
  double f = pure_input_norm(s, psi, d);
  for (int it = 0; it < 300; ++it) {
    Matrix m = unvec(s * vec(Matrix(psi * psi.adjoint())), d);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix gm = svd.matrixU() * svd.matrixV().adjoint();
    Matrix w = unvec(s.adjoint() * vec(gm), d);
    Vector g = 0.5 * (w + w.adjoint()) * psi;
    Vector gt = g - (psi.dot(g)) * psi;  // tangent to the unit sphere
    double gn = gt.norm();
    if (gn < 1e-10 * std::max(1.0, f)) break;
    double eta = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      Vector trial = (psi + eta * gt).normalized();
      double ft = pure_input_norm(s, trial, d);
      if (ft >= f + 0.1 * eta * gn * gn) {
        psi = trial;
        f = ft;
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }
  *out = psi;
  return f;
}

}  // namespace

NormEstimate estimate_1to1_norm(const SuperMatrix& s, int restarts,
                                std::uint64_t seed) {
  if (restarts < 1)
    throw std::invalid_argument("estimate_1to1_norm: restarts >= 1");
  const Eigen::Index d = side_of(s);
  std::vector<double> values(restarts);
  std::vector<Vector> args(restarts);
  parallel_for(restarts, [&](int rs) {
    auto rng = seeded_rng(seed, std::uint64_t(rs));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector psi(d);
    for (Eigen::Index i = 0; i < d; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    psi.normalize();
    values[rs] = ascend(s, psi, d, &args[rs]);
  });
  NormEstimate est;
  double best_half = 0.0;
  for (int rs = 0; rs < restarts; ++rs) {
    if (values[rs] > est.lower) {
      est.lower = values[rs];
      est.psi = args[rs];
    }
    if (rs == restarts / 2 - 1) best_half = est.lower;
  }
  est.saturated = restarts > 1 &&
                  est.lower - best_half <= 1e-8 * std::max(1.0, est.lower);
  est.note = est.saturated ? "restart saturation reached"
                           : "best value still improving in the last half of restarts";
  return est;
}

}  // namespace lindblad
