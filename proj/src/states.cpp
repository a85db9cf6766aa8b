#include "entbound/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entbound/rng.hpp"

namespace entbound {

PureState::PureState(Index dimA, Index dimB, Vector amplitudes)
    : dim_a_(dimA), dim_b_(dimB), amplitudes_(std::move(amplitudes)) {
  if (dim_a_ < 1 || dim_b_ < 1)
    throw DimensionError("PureState: dimensions must be positive");
  if (amplitudes_.size() != dim_a_ * dim_b_)
    throw DimensionError("PureState: expected " +
                         std::to_string(dim_a_ * dim_b_) + " amplitudes, got " +
                         std::to_string(amplitudes_.size()));
  if (!all_finite(amplitudes_))
    throw ContractError("PureState: non-finite amplitude");
  norm2_ = amplitudes_.squaredNorm();
  if (norm2_ > 1.0 + kStructuralTol)
    throw ContractError("PureState: squared norm " + std::to_string(norm2_) +
                        " exceeds 1");
}

Matrix PureState::as_matrix() const {
  Matrix m(dim_a_, dim_b_);
  for (Index a = 0; a < dim_a_; ++a)
    for (Index b = 0; b < dim_b_; ++b) m(a, b) = amplitudes_(a * dim_b_ + b);
  return m;
}

PureState PureState::scaled(Complex factor) const {
  return PureState(dim_a_, dim_b_, Vector(factor * amplitudes_));
}

DensityOperator::DensityOperator(Index dimA, Index dimB, Matrix matrix,
                                 double psd_tol)
    : dim_a_(dimA), dim_b_(dimB), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != dim_a_ * dim_b_)
    throw DimensionError("DensityOperator: matrix side " +
                         std::to_string(matrix_.rows()) + " does not match " +
                         std::to_string(dim_a_) + "x" + std::to_string(dim_b_));
  if (!all_finite(matrix_))
    throw ContractError("DensityOperator: non-finite entry");
  if (!is_hermitian(matrix_))
    throw ContractError("DensityOperator: matrix is not Hermitian within 1e-10");
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_,
                                                     Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -psd_tol)
    throw ContractError("DensityOperator: minimum eigenvalue " +
                        std::to_string(min_eig) + " below -" +
                        std::to_string(psd_tol));
  weight_ = matrix_.trace().real();
  if (weight_ <= 0.0)
    throw ContractError("DensityOperator: trace must be positive");
  if (weight_ > 1.0 + kStructuralTol)
    throw ContractError("DensityOperator: trace " + std::to_string(weight_) +
                        " exceeds 1");
}

DensityOperator DensityOperator::scaled(double factor) const {
  return DensityOperator(dim_a_, dim_b_, Matrix(factor * matrix_));
}

SchmidtDecomposition schmidt_decompose(const PureState& psi) {
  if (psi.norm2() <= 0.0)
    throw DomainError("schmidt_decompose: zero state");
  Eigen::JacobiSVD<Matrix> svd(psi.as_matrix(),
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtDecomposition out;
  out.dimA = psi.dimA();
  out.dimB = psi.dimB();
  out.basisA = svd.matrixU();
  // Psi_{ab} = Sum_k s_k U(a,k) conj(V(b,k)), so the B-side Schmidt
  // vectors are the conjugated right singular vectors.
  out.basisB = svd.matrixV().conjugate();
  const Index d = std::min(psi.dimA(), psi.dimB());
  out.weights.resize(static_cast<std::size_t>(d), 0.0);
  for (Index k = 0; k < svd.singularValues().size() && k < d; ++k) {
    const double s = svd.singularValues()(k);
    out.weights[static_cast<std::size_t>(k)] = s * s;
  }
  return out;
}

PureState pure_from_schmidt(const std::vector<double>& weights,
                            const Matrix& basisA, const Matrix& basisB) {
  const Index dimA = basisA.rows();
  const Index dimB = basisB.rows();
  const Index d = static_cast<Index>(weights.size());
  if (d > basisA.cols() || d > basisB.cols())
    throw DimensionError("pure_from_schmidt: more weights than basis vectors");
  Vector amps = Vector::Zero(dimA * dimB);
  for (Index k = 0; k < d; ++k) {
    const double w = weights[static_cast<std::size_t>(k)];
    if (w < 0) throw DomainError("pure_from_schmidt: negative weight");
    amps += std::sqrt(w) * kron(Vector(basisA.col(k)), Vector(basisB.col(k)));
  }
  return PureState(dimA, dimB, std::move(amps));
}

PureState maximally_entangled(const SchmidtDecomposition& schmidt) {
  const Index d = schmidt.d();
  if (d < 2)
    throw DomainError("maximally_entangled: need at least 2 Schmidt pairs");
  std::vector<double> uniform(static_cast<std::size_t>(d),
                              1.0 / static_cast<double>(d));
  return pure_from_schmidt(uniform, schmidt.basisA, schmidt.basisB);
}

Matrix filter_operator(const SchmidtDecomposition& schmidt) {
  const double total =
      std::accumulate(schmidt.weights.begin(), schmidt.weights.end(), 0.0);
  if (std::abs(total - 1.0) > kStructuralTol)
    throw ContractError("filter_operator: weights are not from a normalized state");
  const Index d = schmidt.d();
  Matrix m = Matrix::Zero(schmidt.dimA, schmidt.dimA);
  for (Index k = 0; k < d; ++k) {
    const Vector alpha = schmidt.basisA.col(k);
    m += std::sqrt(static_cast<double>(d) *
                   schmidt.weights[static_cast<std::size_t>(k)]) *
         (alpha * alpha.adjoint());
  }
  return m;
}

DensityOperator density_from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityOperator(psi.dimA(), psi.dimB(), Matrix(v * v.adjoint()));
}

PureState random_pure(Index dimA, Index dimB, std::uint64_t seed) {
  Rng rng(seed);
  Vector amps = random_gaussian_vector(dimA * dimB, rng);
  amps /= amps.norm();
  return PureState(dimA, dimB, std::move(amps));
}

DensityOperator random_density(Index dim, Index rank, std::uint64_t seed) {
  if (rank < 1 || rank > dim)
    throw DomainError("random_density: rank must be in [1, dim]");
  Rng rng(seed);
  const Matrix g = random_gaussian_matrix(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Symmetrize away the last bits of rounding.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(dim, 1, std::move(rho));
}

std::vector<double> random_schmidt_weights(Index d, std::uint64_t seed,
                                           double min_weight) {
  if (d < 1) throw DomainError("random_schmidt_weights: d must be positive");
  if (min_weight < 0.0 || min_weight * static_cast<double>(d) > 1.0)
    throw DomainError("random_schmidt_weights: min_weight out of range");
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(d));
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  // Uniform on the simplex; the affine map below is the conditioned-law
  // sample with min entry >= min_weight.
  const double slack = 1.0 - min_weight * static_cast<double>(d);
  for (auto& x : w) x = min_weight + slack * (x / sum);
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

}  // namespace entbound
