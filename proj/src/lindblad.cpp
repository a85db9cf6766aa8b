#include "entbound/lindblad.hpp"

#include <cmath>
#include <string>

namespace entbound {

Matrix spontaneous_decay_gamma() {
  Matrix g = Matrix::Zero(3, 3);
  g(1, 0) = std::sqrt(2.0);
  g(2, 1) = 1.0;
  return g;
}

Matrix decoherence_gamma() {
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = 2.0;
  g(1, 1) = 1.0;
  return g;
}

Liouvillian::Liouvillian(const LindbladModel& model, Index dimA, Index dimB) {
  const Index acted = model.side == Side::B ? dimB : dimA;
  const Index other = model.side == Side::B ? dimA : dimB;
  if (model.gamma.rows() != acted || model.gamma.cols() != acted)
    throw DimensionError("Liouvillian: gamma is " +
                         std::to_string(model.gamma.rows()) + "x" +
                         std::to_string(model.gamma.cols()) +
                         " but the acted subsystem has dimension " +
                         std::to_string(acted));
  if (model.Gamma < 0.0)
    throw DomainError("Liouvillian: decay constant must be nonnegative");
  gamma_rate_ = model.Gamma;
  const Matrix eye = Matrix::Identity(other, other);
  jump_ = model.side == Side::B ? kron(eye, model.gamma)
                                : kron(model.gamma, eye);
  jump_dag_ = jump_.adjoint();
  const Matrix gg = model.gamma.adjoint() * model.gamma;
  absorber_ = model.side == Side::B ? kron(eye, gg) : kron(gg, eye);
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  return 0.5 * gamma_rate_ *
         (2.0 * (jump_ * rho * jump_dag_) - rho * absorber_ -
          absorber_ * rho);
}

Matrix liouvillian_apply(const DensityOperator& rho,
                         const LindbladModel& model) {
  return Liouvillian(model, rho.dimA(), rho.dimB()).apply(rho.matrix());
}

Trajectory evolve(const DensityOperator& rho0, const LindbladModel& model,
                  double t_max, double dt, double psd_tol) {
  if (dt <= 0.0) throw DomainError("evolve: dt must be positive");
  if (t_max < 0.0) throw DomainError("evolve: t_max must be nonnegative");
  const Liouvillian generator(model, rho0.dimA(), rho0.dimB());
  const auto steps = static_cast<long>(std::llround(t_max / dt));

  constexpr double kTraceDriftTol = 1e-8;
  const double trace0 = rho0.weight();

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  Matrix rho = rho0.matrix();
  for (long step = 1; step <= steps; ++step) {
    const Matrix k1 = generator.apply(rho);
    const Matrix k2 = generator.apply(rho + 0.5 * dt * k1);
    const Matrix k3 = generator.apply(rho + 0.5 * dt * k2);
    const Matrix k4 = generator.apply(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();

    const double t = static_cast<double>(step) * dt;
    if (std::abs(rho.trace().real() - trace0) > kTraceDriftTol)
      throw NumericalError("evolve: trace drift above 1e-8 at t = " +
                           std::to_string(t));
    try {
      traj.states.emplace_back(rho0.dimA(), rho0.dimB(), rho, psd_tol);
    } catch (const ContractError& err) {
      throw NumericalError("evolve: state invalid at t = " + std::to_string(t) +
                           " (" + err.what() + ")");
    }
    traj.times.push_back(t);
  }
  return traj;
}

Trajectory bound_trajectory(Trajectory traj, PairIndex pairA, PairIndex pairB,
                            int k) {
  if (traj.states.empty()) return traj;
  const Index dimA = traj.states.front().dimA();
  const Index dimB = traj.states.front().dimB();
  const LocalBasisPair basis = LocalBasisPair::computational(dimA, dimB);
  const Matrix v = v_operator(k, pairA, pairB, basis, dimA, dimB);

  const std::size_t n = traj.states.size();
  traj.raw.resize(n);
  traj.clamped.resize(n);
  traj.trace.resize(n);
  traj.purity.resize(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Matrix& rho = traj.states[idx].matrix();
    const Matrix two_copy = kron(rho, rho);
    const double raw = (two_copy.transpose().cwiseProduct(v)).sum().real();
    traj.raw[idx] = raw;
    traj.clamped[idx] = std::max(0.0, raw);
    traj.trace[idx] = traj.states[idx].weight();
    traj.purity[idx] = (rho * rho).trace().real();
  }
  return traj;
}

}  // namespace entbound
