#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entbound/bounds.hpp"
#include "entbound/channels.hpp"

namespace entbound {

enum class LawId {
  EQ10,
  EQ11,
  EQ12,
  EQ15,
  EQ16,
  EQ17,
  EQ17_EQUALITY,
  EQ133_SCAN,
};

std::string law_name(LawId law);
LawId parse_law(const std::string& name);

struct WorstInstance {
  std::uint64_t seed = 0;
  Index dimA = 0;
  Index dimB = 0;
  double value = 0.0;     // residual (equalities) or slack (inequalities)
  double severity = 0.0;  // merge order; larger is worse
  std::string relation;   // set by the scan ("EQ133" / "EQ155")
};

struct VerificationReport {
  std::string law_id;
  int trials = 0;
  double max_abs_residual = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
  int violations = 0;
  std::vector<WorstInstance> worst;  // sorted by severity, capped
  double tolerance = 0.0;
  bool pass = true;
  std::string note;
  std::string confirms;  // scan only: CONFIRMS-PAPER | INCONCLUSIVE
};

// Associative merge; keeps the worst-instance list bounded.
void merge_into(VerificationReport& into, const VerificationReport& part);

// One randomized test case. The channel acts on side B; pair indices
// refer to the Schmidt basis of psi, with pairA inside the Schmidt rank.
struct FactorizationInstance {
  PureState psi;
  SchmidtDecomposition schmidt;
  LocalBasisPair basis;
  KrausChannel channel;
  PairIndex pairA;
  PairIndex pairB;
  Index d = 0;
  std::uint64_t seed = 0;
};

enum class ChannelFamily { Cptp, SingleKrausFilter };
enum class WeightFamily { Generic, MinWeight, OneZero, NearUniform };

FactorizationInstance make_instance(Index dimA, Index dimB,
                                    std::uint64_t seed,
                                    ChannelFamily channel_family,
                                    WeightFamily weight_family,
                                    double min_weight = 0.0,
                                    int n_kraus = 1);

// Single-instance verifiers. Every law is evaluated on UNNORMALIZED
// post-channel operators with the homogeneous bound functionals; this is
// the reading under which the probability factors cancel identically.
VerificationReport verify_mlb_factorization(const FactorizationInstance& inst);
VerificationReport verify_alb_pure(const FactorizationInstance& inst);
VerificationReport verify_alb_inequality(const FactorizationInstance& inst);
VerificationReport verify_alb_equality_invertible(
    const FactorizationInstance& inst);
VerificationReport verify_qubit_factorization(
    const FactorizationInstance& inst);
VerificationReport verify_concurrence_upper(const FactorizationInstance& inst);
VerificationReport verify_tau_upper(const FactorizationInstance& inst);

// Instance family used by the refutation scan, fully determined by the
// per-trial seed so any recorded violation replays from its seed alone.
FactorizationInstance scan_instance(Index dimA, Index dimB,
                                    std::uint64_t trial_seed);

struct ScanValues {
  double slack133 = 0.0;          // lhs - rhs of the claimed tau lower bound
  double max_residual155 = 0.0;   // worst per-pair equality residual
};

ScanValues evaluate_refuted_relations(const FactorizationInstance& inst);

// Random search over the two relations the factorization results refute.
// A finished scan passes regardless of outcome; `confirms` records whether
// a violation was actually exhibited.
VerificationReport scan_refuted_relations(Index dimA, Index dimB, int trials,
                                          std::uint64_t seed);

// Drives `trials` instances of one law at the given dimensions.
VerificationReport verify_law(
    LawId law, Index dimA, Index dimB, int trials, std::uint64_t seed,
    const std::optional<KrausChannel>& pinned_channel = std::nullopt);

}  // namespace entbound
