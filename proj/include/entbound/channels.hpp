#pragma once

#include <cstdint>
#include <vector>

#include "entbound/states.hpp"

namespace entbound {

enum class Side { A, B };

// Completely positive map sigma -> Sum_k K sigma K^dag on one subsystem.
// Trace-nonincreasing (filtering) families are first-class; they are the
// only way to exercise the p != 1 regime of the factorization laws.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> kraus);

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  bool cptp() const { return cptp_; }

 private:
  Index dim_in_, dim_out_;
  std::vector<Matrix> kraus_;
  bool cptp_;
};

struct ChannelApplication {
  DensityOperator output;  // unnormalized; callers normalize explicitly
  double p;                // trace(output) / trace(input)
};

ChannelApplication apply(const DensityOperator& sigma, const KrausChannel& ch,
                         Side side);

// Single-Kraus channels map pure states to (sub-normalized) pure states.
PureState apply_to_pure(const PureState& psi, const KrausChannel& ch,
                        Side side);

// Unnormalized (1 (x) S)|phi+><phi+| built in the decomposition's bases,
// with p'' = its trace. side selects which subsystem the channel acts on.
ChannelApplication choi_state(const KrausChannel& ch,
                              const SchmidtDecomposition& schmidt,
                              Side side = Side::B);

struct FilterConsistencyReport {
  double max_entry_error = 0.0;  // lhs vs (M x I) choi (M^dag x I)
  double p_residual = 0.0;       // |p' - p p''|
  double p = 0.0;
  double p_prime = 0.0;
  double p_double_prime = 0.0;
  bool pass = false;
};

// Checks (1 (x) S)|Psi><Psi| == (M (x) I) [(1 (x) S)|phi+><phi+|] (M^dag (x) I)
// and the probability chain p' = p p''.
FilterConsistencyReport filter_consistency(const PureState& psi,
                                           const KrausChannel& ch);

DensityOperator normalize(const DensityOperator& sigma);

KrausChannel identity_channel(Index d);
// rho -> (1 - lambda) rho + lambda tr(rho) I/d, via the Weyl-operator set.
KrausChannel depolarizing(Index d, double lambda);
KrausChannel amplitude_damping(double eta);
// One-Kraus filtering channel; largest singular value must be <= 1.
KrausChannel single_filter(Matrix k);
// Haar-random isometry dim -> dim*n_kraus sliced into Kraus blocks.
KrausChannel random_channel(Index dim, int n_kraus, std::uint64_t seed);
// Random single-Kraus filter with largest singular value exactly 1.
KrausChannel random_filter(Index dim, std::uint64_t seed);

}  // namespace entbound
