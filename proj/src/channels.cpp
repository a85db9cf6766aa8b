#include "entbound/channels.hpp"

#include <cmath>
#include <string>

#include "entbound/rng.hpp"

namespace entbound {

KrausChannel::KrausChannel(std::vector<Matrix> kraus)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty())
    throw DomainError("KrausChannel: at least one Kraus operator required");
  dim_out_ = kraus_.front().rows();
  dim_in_ = kraus_.front().cols();
  Matrix completeness = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_)
      throw DimensionError("KrausChannel: inconsistent Kraus shapes");
    if (!all_finite(k)) throw ContractError("KrausChannel: non-finite entry");
    completeness += k.adjoint() * k;
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(completeness,
                                                     Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().maxCoeff() > 1.0 + kReportTol)
    throw ContractError(
        "KrausChannel: Sum K^dag K exceeds the identity (max eigenvalue " +
        std::to_string(solver.eigenvalues().maxCoeff()) + ")");
  cptp_ = (completeness - Matrix::Identity(dim_in_, dim_in_)).norm() < kReportTol;
}

namespace {

Matrix embed(const Matrix& k, Index other_dim, Side side) {
  const Matrix eye = Matrix::Identity(other_dim, other_dim);
  return side == Side::B ? kron(eye, k) : kron(k, eye);
}

}  // namespace

ChannelApplication apply(const DensityOperator& sigma, const KrausChannel& ch,
                         Side side) {
  const Index acted = side == Side::B ? sigma.dimB() : sigma.dimA();
  const Index other = side == Side::B ? sigma.dimA() : sigma.dimB();
  if (ch.dim_in() != acted)
    throw DimensionError("apply: channel dimension " +
                         std::to_string(ch.dim_in()) +
                         " does not match subsystem dimension " +
                         std::to_string(acted));
  const Index out_side = other * ch.dim_out();
  Matrix out = Matrix::Zero(out_side, out_side);
  for (const auto& k : ch.kraus()) {
    const Matrix lifted = embed(k, other, side);
    out += lifted * sigma.matrix() * lifted.adjoint();
  }
  out = 0.5 * (out + out.adjoint()).eval();
  const double p = out.trace().real() / sigma.weight();
  const Index dim_a = side == Side::B ? sigma.dimA() : ch.dim_out();
  const Index dim_b = side == Side::B ? ch.dim_out() : sigma.dimB();
  return {DensityOperator(dim_a, dim_b, std::move(out)), p};
}

PureState apply_to_pure(const PureState& psi, const KrausChannel& ch,
                        Side side) {
  if (ch.kraus().size() != 1)
    throw DomainError("apply_to_pure: channel must have a single Kraus operator");
  const Index acted = side == Side::B ? psi.dimB() : psi.dimA();
  const Index other = side == Side::B ? psi.dimA() : psi.dimB();
  if (ch.dim_in() != acted)
    throw DimensionError("apply_to_pure: channel/subsystem dimension mismatch");
  const Vector out = embed(ch.kraus().front(), other, side) * psi.amplitudes();
  const Index dim_a = side == Side::B ? psi.dimA() : ch.dim_out();
  const Index dim_b = side == Side::B ? ch.dim_out() : psi.dimB();
  return PureState(dim_a, dim_b, out);
}

ChannelApplication choi_state(const KrausChannel& ch,
                              const SchmidtDecomposition& schmidt, Side side) {
  const Index acted = side == Side::B ? schmidt.dimB : schmidt.dimA;
  if (ch.dim_in() != acted)
    throw DimensionError("choi_state: channel dimension does not match the " +
                         std::string(side == Side::B ? "B" : "A") + " side");
  const PureState phi = maximally_entangled(schmidt);
  return apply(density_from_pure(phi), ch, side);
}

FilterConsistencyReport filter_consistency(const PureState& psi,
                                           const KrausChannel& ch) {
  if (std::abs(psi.norm2() - 1.0) > kStructuralTol)
    throw ContractError("filter_consistency: state must be normalized");
  const SchmidtDecomposition schmidt = schmidt_decompose(psi);
  const Matrix m = filter_operator(schmidt);

  const ChannelApplication direct = apply(density_from_pure(psi), ch, Side::B);
  const ChannelApplication choi = choi_state(ch, schmidt, Side::B);

  const Matrix lifted = kron(m, Matrix::Identity(ch.dim_out(), ch.dim_out()));
  const Matrix filtered = lifted * choi.output.matrix() * lifted.adjoint();

  FilterConsistencyReport report;
  report.p_prime = direct.output.weight();
  report.p_double_prime = choi.output.weight();
  report.p = filtered.trace().real() / choi.output.weight();
  report.max_entry_error =
      (direct.output.matrix() - filtered).cwiseAbs().maxCoeff();
  report.p_residual =
      std::abs(report.p_prime - report.p * report.p_double_prime);
  report.pass =
      report.max_entry_error < kReportTol && report.p_residual < kReportTol;
  return report;
}

DensityOperator normalize(const DensityOperator& sigma) {
  if (sigma.weight() < 1e-12)
    throw DomainError("normalize: trace below 1e-12");
  return sigma.scaled(1.0 / sigma.weight());
}

KrausChannel identity_channel(Index d) {
  return KrausChannel({Matrix::Identity(d, d)});
}

KrausChannel depolarizing(Index d, double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw DomainError("depolarizing: lambda must lie in [0,1]");
  const double dd = static_cast<double>(d);
  std::vector<Matrix> ks;
  ks.reserve(static_cast<std::size_t>(d * d));
  Matrix shift = Matrix::Zero(d, d);  // X |k> = |k+1 mod d>
  for (Index k = 0; k < d; ++k) shift((k + 1) % d, k) = 1.0;
  Matrix clock = Matrix::Zero(d, d);  // Z |k> = w^k |k>
  for (Index k = 0; k < d; ++k)
    clock(k, k) = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / dd);
  ks.push_back(std::sqrt(1.0 - lambda + lambda / (dd * dd)) *
               Matrix::Identity(d, d));
  Matrix xa = Matrix::Identity(d, d);
  for (Index a = 0; a < d; ++a) {
    Matrix w = xa;
    for (Index b = 0; b < d; ++b) {
      if (a != 0 || b != 0) ks.push_back(std::sqrt(lambda) / dd * w);
      w = w * clock;
    }
    xa = shift * xa;
  }
  return KrausChannel(std::move(ks));
}

KrausChannel amplitude_damping(double eta) {
  if (eta < 0.0 || eta > 1.0)
    throw DomainError("amplitude_damping: eta must lie in [0,1]");
  Matrix k0 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - eta);
  Matrix k1 = Matrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(eta);
  return KrausChannel({std::move(k0), std::move(k1)});
}

KrausChannel single_filter(Matrix k) {
  return KrausChannel({std::move(k)});
}

KrausChannel random_channel(Index dim, int n_kraus, std::uint64_t seed) {
  if (n_kraus < 1) throw DomainError("random_channel: n_kraus must be >= 1");
  Rng rng(seed);
  const Matrix g = random_gaussian_matrix(dim * n_kraus, dim, rng);
  // Thin QR: the Q factor is a Haar-random isometry, so the sliced family
  // satisfies Sum K^dag K = I exactly.
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q =
      qr.householderQ() * Matrix::Identity(dim * n_kraus, dim);
  std::vector<Matrix> ks;
  ks.reserve(static_cast<std::size_t>(n_kraus));
  for (int slice = 0; slice < n_kraus; ++slice)
    ks.push_back(q.middleRows(static_cast<Index>(slice) * dim, dim));
  return KrausChannel(std::move(ks));
}

KrausChannel random_filter(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  Matrix g = random_gaussian_matrix(dim, dim, rng);
  g /= singular_values(g)(0);
  return single_filter(std::move(g));
}

}  // namespace entbound
