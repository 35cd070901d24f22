#include "lindblad/ladder.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lindblad {

namespace {

void require_ladder(const LadderSpec& spec) {
  if (spec.d < 2 || spec.d > kMaxLadderDim) {
    throw std::invalid_argument("ladder dimension must be in [2, 16]");
  }
  if (static_cast<Eigen::Index>(spec.alphas.size()) != spec.d - 1) {
    throw std::invalid_argument("ladder needs d-1 couplings");
  }
  for (double a : spec.alphas) {
    if (!(a > 0.0)) {
      throw std::invalid_argument("ladder couplings must be positive");
    }
  }
  if (!(spec.eta > 0.0)) {
    throw std::invalid_argument("ladder rate must be positive");
  }
}

// alpha_j with the convention alpha_0 = 0; j ranges over 0..d-1.
double coupling(const LadderSpec& spec, Eigen::Index j) {
  if (j <= 0 || j >= spec.d) return 0.0;
  return spec.alphas[static_cast<std::size_t>(j - 1)];
}

std::vector<double> sorted_eigs(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (sym + sym.transpose()));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("ladder block eigensolve failed");
  }
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

}  // namespace

LadderSpec make_ladder_spec(Eigen::Index d, std::vector<double> alphas,
                            double eta) {
  LadderSpec spec{d, std::move(alphas), eta};
  require_ladder(spec);
  return spec;
}

JumpSet ladder_jump(const LadderSpec& spec) {
  require_ladder(spec);
  Matrix l = Matrix::Zero(spec.d, spec.d);
  const double root_eta = std::sqrt(spec.eta);
  for (Eigen::Index j = 1; j < spec.d; ++j) {
    l(j - 1, j) = root_eta * coupling(spec, j);
  }
  return make_jump_set(spec.d, {l});
}

LadderBlocks ladder_blocks(const LadderSpec& spec) {
  require_ladder(spec);
  const Eigen::Index d = spec.d;
  const double half_eta = 0.5 * spec.eta;

  LadderBlocks blocks;
  blocks.b.reserve(static_cast<std::size_t>(d - 1));

  for (Eigen::Index l = 0; l < d; ++l) {
    const Eigen::Index n = d - l;
    Eigen::MatrixXd bl = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ai = coupling(spec, i);
      const double ali = coupling(spec, l + i);
      bl(i, i) = -half_eta * (ai * ai + ali * ali);
      if (i + 1 < n) {
        const double up = half_eta * coupling(spec, i + 1) * coupling(spec, l + i + 1);
        bl(i, i + 1) = up;
        bl(i + 1, i) = up;
      }
    }
    if (l == 0) {
      Eigen::MatrixXd p = Eigen::MatrixXd::Identity(d, d) -
                          Eigen::MatrixXd::Constant(d, d, 1.0 / double(d));
      blocks.pb0p = p * bl * p;
    } else {
      blocks.b.push_back(std::move(bl));
    }
  }
  return blocks;
}

std::vector<double> ladder_block_eigenvalues(const LadderSpec& spec) {
  LadderBlocks blocks = ladder_blocks(spec);
  const Eigen::Index d = spec.d;

  // P B_0 P annihilates the all-ones vector, contributing a structural zero
  // that belongs to the identity direction, not the traceless sector. Deflate
  // it exactly: restrict to the orthogonal complement of ones/sqrt(d) via a
  // Householder-style orthonormal completion.
  Eigen::VectorXd ones = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(double(d)));
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(d, d);
  q.col(0) = ones;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  Eigen::MatrixXd full_q = qr.householderQ();
  // Householder Q may flip the first column's sign; the complement columns
  // are orthonormal to ones either way.
  Eigen::MatrixXd comp = full_q.rightCols(d - 1);
  Eigen::MatrixXd deflated = comp.transpose() * blocks.pb0p * comp;

  std::vector<double> eigs = sorted_eigs(deflated);
  for (const Eigen::MatrixXd& bl : blocks.b) {
    std::vector<double> le = sorted_eigs(bl);
    // Off-diagonal blocks carry a conjugate pair of matrix diagonals each,
    // so every eigenvalue appears twice.
    eigs.insert(eigs.end(), le.begin(), le.end());
    eigs.insert(eigs.end(), le.begin(), le.end());
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

double ladder_mu2(const LadderSpec& spec) {
  std::vector<double> eigs = ladder_block_eigenvalues(spec);
  return eigs.back();
}

LadderSpec family_spec(LadderFamily family, Eigen::Index d, double gamma) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("family rate must be positive");
  }
  std::vector<double> alphas;
  alphas.reserve(static_cast<std::size_t>(d - 1));
  for (Eigen::Index j = 1; j < d; ++j) {
    double a = 0.0;
    switch (family) {
      case LadderFamily::HO:
        a = std::sqrt(gamma * double(j));
        break;
      case LadderFamily::AM:
        a = std::sqrt(gamma * double(j) * double(d - j));
        break;
      case LadderFamily::UL:
        a = std::sqrt(gamma);
        break;
    }
    alphas.push_back(a);
  }
  return make_ladder_spec(d, std::move(alphas), 1.0);
}

std::vector<FamilyScanRow> family_scan(LadderFamily family, Eigen::Index d_max,
                                       double gamma) {
  if (d_max < 2 || d_max > kMaxLadderDim) {
    throw std::invalid_argument("scan dimension must be in [2, 16]");
  }
  std::vector<FamilyScanRow> rows;
  for (Eigen::Index d = 2; d <= d_max; ++d) {
    rows.push_back({d, ladder_mu2(family_spec(family, d, gamma))});
  }
  return rows;
}

double c_alpha(double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("c_alpha needs alpha > 0");
  }
  const double a2 = alpha * alpha;
  const double first = 0.25 * (2.0 + a2) - 0.25 * alpha * std::sqrt(4.0 + a2);
  const double second = 0.5 * (1.0 + a2) - std::sqrt((1.0 - a2 + a2 * a2) / 3.0);
  return std::min(first, second);
}

}  // namespace lindblad
