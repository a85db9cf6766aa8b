#pragma once

#include <cstdint>
#include <vector>

#include "entbound/linalg.hpp"

namespace entbound {

// Pure bipartite state on H_A (x) H_B with the global index convention
// a*dimB + b for |a>_A |b>_B. Sub-normalized states are first-class:
// every bound functional in this library is homogeneous, so probability
// factors are carried by the amplitudes instead of side-band scalars.
class PureState {
 public:
  PureState(Index dimA, Index dimB, Vector amplitudes);

  Index dimA() const { return dim_a_; }
  Index dimB() const { return dim_b_; }
  const Vector& amplitudes() const { return amplitudes_; }
  double norm2() const { return norm2_; }

  // Amplitudes reshaped to a dimA x dimB matrix, entry (a,b).
  Matrix as_matrix() const;

  PureState scaled(Complex factor) const;

 private:
  Index dim_a_, dim_b_;
  Vector amplitudes_;
  double norm2_;
};

// Hermitian PSD operator, possibly with trace below one (unnormalized
// post-channel operators). dimB == 1 marks a single-system operator.
class DensityOperator {
 public:
  DensityOperator(Index dimA, Index dimB, Matrix matrix,
                  double psd_tol = kReportTol);

  Index dimA() const { return dim_a_; }
  Index dimB() const { return dim_b_; }
  Index side() const { return dim_a_ * dim_b_; }
  const Matrix& matrix() const { return matrix_; }
  double weight() const { return weight_; }

  DensityOperator scaled(double factor) const;

 private:
  Index dim_a_, dim_b_;
  Matrix matrix_;
  double weight_;
};

struct SchmidtDecomposition {
  Index dimA = 0;
  Index dimB = 0;
  // d = min(dimA, dimB) weights, descending, summing to the source norm2.
  std::vector<double> weights;
  // Full orthonormal bases; the first d columns carry the weights.
  Matrix basisA;
  Matrix basisB;

  Index d() const { return static_cast<Index>(weights.size()); }
};

SchmidtDecomposition schmidt_decompose(const PureState& psi);

// Sum_i sqrt(w_i) |alpha_i beta_i> for the given weights and bases.
PureState pure_from_schmidt(const std::vector<double>& weights,
                            const Matrix& basisA, const Matrix& basisB);

// |phi+> = Sum_i (1/sqrt(d)) |alpha_i beta_i> in the decomposition's bases.
PureState maximally_entangled(const SchmidtDecomposition& schmidt);

// Local filter M = sqrt(d) Sum_i sqrt(w_i) |alpha_i><alpha_i| on H_A,
// satisfying (M (x) I)|phi+> = |Psi>.
Matrix filter_operator(const SchmidtDecomposition& schmidt);

DensityOperator density_from_pure(const PureState& psi);

PureState random_pure(Index dimA, Index dimB, std::uint64_t seed);
DensityOperator random_density(Index dim, Index rank, std::uint64_t seed);

// Uniform simplex point (exponential-spacings method), optionally
// conditioned on min entry >= min_weight, sorted descending.
std::vector<double> random_schmidt_weights(Index d, std::uint64_t seed,
                                           double min_weight = 0.0);

}  // namespace entbound
