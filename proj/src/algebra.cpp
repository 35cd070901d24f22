#include "lindblad/algebra.hpp"

#include <cmath>

#include "lindblad/superop.hpp"

namespace lindblad {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kRankTol = 1e-9;  // relative to the largest singular value

// Orthonormal column basis of the span of `cols`, via SVD rank decision.
Matrix span_basis(const Matrix& cols) {
  Eigen::BDCSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Matrix(cols.rows(), 0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kRankTol * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

GeneratorSet make_generator_set(Eigen::Index dim,
                                std::vector<Matrix> generators) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("make_generator_set: dim out of range");
  for (const auto& g : generators)
    if (g.rows() != dim || g.cols() != dim)
      throw std::invalid_argument("make_generator_set: dimension mismatch");
  return GeneratorSet{dim, std::move(generators)};
}

int generated_algebra_dim(const GeneratorSet& g, int max_rounds) {
  if (g.generators.empty())
    throw std::invalid_argument("generated_algebra_dim: generators empty");
  const Eigen::Index d = g.dim;
  const Eigen::Index n = d * d;
  if (max_rounds <= 0)
    max_rounds = 2 * int(std::ceil(std::log2(double(n) + 1.0))) + 4;

  // Seed: identity plus the generators, each normalized to unit Frobenius
  // norm so the rank tolerance is scale-free.
  std::vector<Matrix> seed;
  seed.push_back(Matrix::Identity(d, d) / std::sqrt(double(d)));
  for (const auto& m : g.generators) {
    double nm = m.norm();
    if (nm > 0.0) seed.push_back(m / nm);
  }
  Matrix cols(n, Eigen::Index(seed.size()));
  for (size_t i = 0; i < seed.size(); ++i) cols.col(Eigen::Index(i)) = vec(seed[i]);
  Matrix basis = span_basis(cols);

  for (int round = 0; round < max_rounds; ++round) {
    const Eigen::Index k = basis.cols();
    if (k >= n) return int(k);
    Matrix grown(n, k + k * k);
    grown.leftCols(k) = basis;
    Eigen::Index col = k;
    for (Eigen::Index a = 0; a < k; ++a) {
      Matrix ma = unvec(basis.col(a), d);
      for (Eigen::Index b = 0; b < k; ++b) {
        Matrix prod = ma * unvec(basis.col(b), d);
        double nm = prod.norm();
        grown.col(col++) = nm > 0.0 ? Vector(vec(prod) / nm) : Vector(vec(prod));
      }
    }
    Matrix next = span_basis(grown);
    if (next.cols() == k) return int(k);
    basis = std::move(next);
  }
  throw std::runtime_error(
      "generated_algebra_dim: rank failed to stabilize; "
      "rank tolerance likely misconfigured");
}

SpanResult spans_antihermitian(const JumpSet& jumps) {
  const Eigen::Index d = jumps.dim;
  const Eigen::Index n = d * d;
  HermitianBasis hb = make_hermitian_basis(d);

  // Anti-Hermitian matrices form a real vector space with orthonormal basis
  // {i B_k}; the coordinate of A along i B_k is Im tr(B_k A). The projection
  // of the complex span of a dagger-closed set S is the real span of the
  // anti-Hermitian parts of m and i m for m in S.
  std::vector<Matrix> gens;
  for (const auto& l : jumps.jumps) {
    gens.push_back((l - l.adjoint()) / 2.0);        // pi(L) = -pi(L^dag)
    gens.push_back(kI * (l + l.adjoint()) / 2.0);   // pi(iL) = pi(iL^dag)
  }
  gens.push_back(kI * Matrix::Identity(d, d));      // adjoined identity

  Eigen::MatrixXd coords(n, Eigen::Index(gens.size()));
  for (size_t c = 0; c < gens.size(); ++c)
    for (Eigen::Index k = 0; k < n; ++k)
      coords(k, Eigen::Index(c)) = (hb.elements[k] * gens[c]).trace().imag();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coords, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(0) > 0.0 && s(i) > kRankTol * s(0)) ++rank;

  SpanResult res;
  res.spans = (rank == n);
  if (res.spans) return res;

  // Generic witness: the null direction of the projected span.
  Matrix a = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < n; ++k)
    a += svd.matrixU()(k, rank) * (kI * hb.elements[k]);

  // Structured witness |u><v| - |v><u|: HS-orthogonality to L and L^dag is
  // <u|L|v> = <v|L|u>; to I it is automatic for orthonormal pairs. Candidate
  // vectors: eigenbasis of the Hermitian matrix iA, then the standard basis.
  double scale = 1.0;
  for (const auto& l : jumps.jumps) scale = std::max(scale, l.norm());
  std::vector<Vector> pool;
  Eigen::SelfAdjointEigenSolver<Matrix> es(kI * a);
  for (Eigen::Index i = 0; i < d; ++i) pool.push_back(es.eigenvectors().col(i));
  for (Eigen::Index i = 0; i < d; ++i) pool.push_back(Vector::Unit(d, i));
  for (size_t i = 0; i < pool.size(); ++i) {
    for (size_t j = 0; j < pool.size(); ++j) {
      if (i == j) continue;
      Vector u = pool[i];
      Vector v = pool[j] - u.dot(pool[j]) * u;
      if (v.norm() < 1e-6) continue;
      v.normalize();
      double worst = 0.0;
      for (const auto& l : jumps.jumps)
        worst = std::max(worst, std::abs(u.dot(l * v) - v.dot(l * u)));
      if (worst <= 1e-8 * scale) {
        Matrix w = u * v.adjoint() - v * u.adjoint();
        res.witness = w / w.norm();
        return res;
      }
    }
  }
  res.witness = a / a.norm();
  return res;
}

bool is_irreducible(const LindbladModel& model, double t) {
  const Eigen::Index d = model.dim;
  std::vector<Matrix> gens = model.jumps.jumps;
  Matrix k = Matrix::Zero(d, d);
  for (const auto& l : model.jumps.jumps) k += 0.5 * (l.adjoint() * l);
  k += kI * model.hamiltonian.evaluate(t);
  gens.push_back(k);
  return generated_algebra_dim(make_generator_set(d, std::move(gens))) == d * d;
}

}  // namespace lindblad
