#pragma once

#include <string>

#include "entbound/states.hpp"

namespace entbound {

// Ordered pair of distinct basis levels (lo < hi), 0-based.
struct PairIndex {
  Index lo = 0;
  Index hi = 1;
};

void validate_pair(PairIndex pair, Index dim);

// The local orthonormal bases the pair indices refer to. The tag travels
// with every BoundValue so factorization checks can enforce that pair
// indices were meant for the Schmidt basis of the input state.
struct LocalBasisPair {
  Matrix basisA;  // columns orthonormal, dimA x dimA
  Matrix basisB;
  std::string tag;

  static LocalBasisPair computational(Index dimA, Index dimB);
  static LocalBasisPair schmidt(const SchmidtDecomposition& schmidt);
};

inline constexpr const char* kComputationalTag = "computational";
inline constexpr const char* kSchmidtTag = "schmidt-of-psi";

struct BoundValue {
  double raw = 0.0;    // signed for squared-bound functionals
  double bound = 0.0;  // clamped lower bound on C (ALB) or C^2 (MLB)
  PairIndex pairA;
  PairIndex pairB;
  std::string basis_tag;
};

// sqrt(2 [ <psi|psi>^2 - tr(rho_r^2) ]) on the unnormalized reduction;
// degree-2 homogeneous in the amplitudes.
double concurrence_pure(const PureState& psi);

// Permutation taking the copy-grouped ordering (AA')(BB') used by the
// two-copy observables to the canonical ordering (AB)(A'B'); exposed so
// tests can probe the convention directly.
Matrix grouped_to_canonical_permutation(Index dimA, Index dimB);

// (|ij> - |ji>)_{AA'} (x) (|mn> - |nm>)_{BB'} in canonical ordering;
// squared norm 4.
Vector chi_vector(PairIndex pairA, PairIndex pairB,
                  const LocalBasisPair& basis, Index dimA, Index dimB);

// 4 P-^{AA'} (x) P-^{BB'} in canonical ordering. Basis independent.
Matrix a_operator(Index dimA, Index dimB);

// The two-copy observable of the measurable bound, k = 1 or 2, in
// canonical ordering.
Matrix v_operator(int k, PairIndex pairA, PairIndex pairB,
                  const LocalBasisPair& basis, Index dimA, Index dimB);

// Algebraic lower bound max{0, S_1 - Sum_{l>1} S_l} from the singular
// values of T_rs = sqrt(lambda_r lambda_s) <chi|Phi_r>|Phi_s>. Degree-1
// homogeneous in the trace; raw == bound.
BoundValue alb(const DensityOperator& rho, PairIndex pairA, PairIndex pairB,
               const LocalBasisPair& basis);

// Same, from an externally supplied eigen-ensemble of rho (shared across
// pairs, and injectable for degenerate-subspace robustness tests).
BoundValue alb_from_eigensystem(const EigenSystem& eig, Index dimA, Index dimB,
                                PairIndex pairA, PairIndex pairB,
                                const LocalBasisPair& basis);

// raw = tr(sigma (x) sigma V_(k)); bound = max(0, raw). Degree-2
// homogeneous in the trace.
BoundValue mlb_squared(const DensityOperator& sigma, int k, PairIndex pairA,
                       PairIndex pairB, const LocalBasisPair& basis);

// SO(d) generator |i><j| - |j><i| in the computational basis.
Matrix so_generator(PairIndex pair, Index dim);

// Sum over all pairs of squared algebraic bounds; equals C^2 on pure states.
double tau(const DensityOperator& rho, const LocalBasisPair& basis);

// Closed-form two-qubit concurrence (spin-flip formula). Kept free of the
// chi/T machinery so it can serve as an independent oracle.
double wootters_concurrence(const DensityOperator& rho);

}  // namespace entbound
