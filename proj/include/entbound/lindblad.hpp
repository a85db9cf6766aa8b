#pragma once

#include <vector>

#include "entbound/bounds.hpp"
#include "entbound/channels.hpp"

namespace entbound {

// One-sided Lindblad generator: the coupling operator gamma acts on a
// single subsystem with decay constant Gamma. Time is measured in units
// of 1/Gamma throughout.
struct LindbladModel {
  Matrix gamma;
  double Gamma = 1.0;
  Side side = Side::B;
};

// The qutrit coupling operators of the decay and dephasing examples, in
// the computational basis as printed: the decay operator pumps population
// down the ladder toward |2> and annihilates |2> itself.
Matrix spontaneous_decay_gamma();
Matrix decoherence_gamma();

// (Gamma/2) [2 (I x g) rho (I x g)^dag - rho (I x g^dag g) - (I x g^dag g) rho]
// with g on the model's side. Prebuilds the lifted operators once.
class Liouvillian {
 public:
  Liouvillian(const LindbladModel& model, Index dimA, Index dimB);
  Matrix apply(const Matrix& rho) const;

 private:
  double gamma_rate_;
  Matrix jump_;       // lifted coupling operator
  Matrix jump_dag_;
  Matrix absorber_;   // lifted g^dag g
};

Matrix liouvillian_apply(const DensityOperator& rho, const LindbladModel& model);

struct Trajectory {
  std::vector<double> times;  // units of Gamma t
  std::vector<DensityOperator> states;
  // Bound series, filled by bound_trajectory.
  std::vector<double> raw;
  std::vector<double> clamped;
  std::vector<double> trace;
  std::vector<double> purity;
};

// Fixed-step classical RK4. States are re-symmetrized each step; trace
// drift beyond 1e-8 or an eigenvalue below -psd_tol raises NumericalError
// naming the offending time instead of being clipped. The default psd_tol
// is calibrated for production steps (dt ~ 1e-3); convergence studies at
// coarse steps pass a looser value.
Trajectory evolve(const DensityOperator& rho0, const LindbladModel& model,
                  double t_max, double dt, double psd_tol = 1e-7);

// Fills the MLB^2 series (computational-basis pairs) for every state.
Trajectory bound_trajectory(Trajectory traj, PairIndex pairA, PairIndex pairB,
                            int k);

}  // namespace entbound
