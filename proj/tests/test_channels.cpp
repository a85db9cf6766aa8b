#include <doctest.h>

#include <cmath>

#include "entbound/bounds.hpp"
#include "entbound/channels.hpp"
#include "entbound/rng.hpp"

using namespace entbound;

namespace {

PureState phi_plus(Index d) {
  Vector amps = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) amps(i * d + i) = 1.0 / std::sqrt(double(d));
  return PureState(d, d, amps);
}

DensityOperator random_bipartite(Index dimA, Index dimB, Index rank,
                                 std::uint64_t seed) {
  return DensityOperator(dimA, dimB,
                         random_density(dimA * dimB, rank, seed).matrix());
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("identity channel leaves the state alone") {
  const DensityOperator rho = random_bipartite(2, 3, 2, 1);
  const ChannelApplication out = apply(rho, identity_channel(3), Side::B);
  CHECK((out.output.matrix() - rho.matrix()).norm() < 1e-14);
  CHECK(out.p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projecting filter on half of phi+") {
  Matrix k = Matrix::Zero(2, 2);
  k(0, 0) = 1.0;
  const ChannelApplication out =
      apply(density_from_pure(phi_plus(2)), single_filter(k), Side::B);
  CHECK(out.p == doctest::Approx(0.5).epsilon(1e-12));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;  // |00><00| / 2
  CHECK((out.output.matrix() - expected).norm() < 1e-14);
}

TEST_CASE("fully depolarizing channel yields the maximally mixed product") {
  for (Index d : {2, 3}) {
    const ChannelApplication out =
        apply(density_from_pure(phi_plus(d)), depolarizing(d, 1.0), Side::B);
    const Matrix expected =
        Matrix::Identity(d * d, d * d) / double(d * d);
    CHECK((out.output.matrix() - expected).norm() < 1e-12);
    CHECK(out.p == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("depolarizing(0) acts as the identity") {
  const DensityOperator rho = random_bipartite(2, 2, 3, 2);
  const ChannelApplication out = apply(rho, depolarizing(2, 0.0), Side::B);
  CHECK((out.output.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("amplitude damping limits") {
  const KrausChannel full = amplitude_damping(1.0);
  const DensityOperator rho = random_density(2, 2, 3);
  const ChannelApplication out =
      apply(DensityOperator(1, 2, rho.matrix()), full, Side::B);
  Matrix ground = Matrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  CHECK((out.output.matrix() - ground).norm() < 1e-12);
  CHECK_THROWS_AS(amplitude_damping(1.5), DomainError);
  CHECK_THROWS_AS(depolarizing(2, -0.1), DomainError);
}

TEST_CASE("apply is linear and degree-1 in the trace") {
  const DensityOperator rho = random_bipartite(2, 2, 2, 3);
  const KrausChannel ch = random_channel(2, 3, 4);
  const Matrix once = apply(rho, ch, Side::B).output.matrix();
  const Matrix scaled = apply(rho.scaled(0.5), ch, Side::B).output.matrix();
  CHECK((scaled - 0.5 * once).norm() < 1e-13);
}

TEST_CASE("composition matches the composed Kraus family") {
  const DensityOperator rho = random_bipartite(2, 2, 2, 5);
  const KrausChannel ch1 = random_channel(2, 2, 6);
  const KrausChannel ch2 = random_channel(2, 2, 7);
  const Matrix sequential =
      apply(apply(rho, ch1, Side::B).output, ch2, Side::B).output.matrix();
  std::vector<Matrix> composed;
  for (const auto& k2 : ch2.kraus())
    for (const auto& k1 : ch1.kraus()) composed.push_back(k2 * k1);
  const Matrix direct =
      apply(rho, KrausChannel(composed), Side::B).output.matrix();
  CHECK((sequential - direct).norm() < 1e-10);
}

TEST_CASE("CPTP channels preserve the trace") {
  for (int rep = 0; rep < 8; ++rep) {
    const KrausChannel ch =
        random_channel(3, 1 + rep % 4, derive_seed(50, std::uint64_t(rep)));
    CHECK(ch.cptp());
    const DensityOperator rho =
        random_bipartite(2, 3, 2, derive_seed(51, std::uint64_t(rep)));
    CHECK(apply(rho, ch, Side::B).p == doctest::Approx(1.0).epsilon(1e-9));
    Matrix completeness = Matrix::Zero(3, 3);
    for (const auto& k : ch.kraus()) completeness += k.adjoint() * k;
    CHECK((completeness - Matrix::Identity(3, 3)).norm() < 1e-10);
  }
}

TEST_CASE("channels acting on side A") {
  const DensityOperator rho = random_bipartite(3, 2, 2, 8);
  const KrausChannel ch = random_channel(3, 2, 9);
  const ChannelApplication out = apply(rho, ch, Side::A);
  CHECK(out.output.dimA() == 3);
  CHECK(out.p == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(apply(rho, ch, Side::B), DimensionError);
}

TEST_CASE("choi state of the identity is phi+") {
  const PureState psi = random_pure(3, 3, 10);
  const SchmidtDecomposition s = schmidt_decompose(psi);
  const ChannelApplication choi = choi_state(identity_channel(3), s);
  const PureState phi = maximally_entangled(s);
  CHECK((choi.output.matrix() - density_from_pure(phi).matrix()).norm() <
        1e-12);
  CHECK(choi.p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("choi state of amplitude damping has concurrence sqrt(1-eta)") {
  const SchmidtDecomposition s = schmidt_decompose(phi_plus(2));
  for (double eta : {0.0, 0.3, 0.7, 1.0}) {
    const ChannelApplication choi = choi_state(amplitude_damping(eta), s);
    const double c = wootters_concurrence(normalize(choi.output));
    CHECK(c == doctest::Approx(std::sqrt(1.0 - eta)).epsilon(1e-10));
  }
}

TEST_CASE("trace-nonincreasing filter gives p'' = (1 + t^2)/2") {
  const SchmidtDecomposition s = schmidt_decompose(phi_plus(2));
  for (double t : {0.0, 0.4, 1.0}) {
    Matrix k = Matrix::Zero(2, 2);
    k(0, 0) = 1.0;
    k(1, 1) = t;
    const ChannelApplication choi = choi_state(single_filter(k), s);
    CHECK(choi.p == doctest::Approx((1.0 + t * t) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("filter consistency: identity, random channels, probability chain") {
  const PureState psi_id = random_pure(2, 2, 11);
  const FilterConsistencyReport id_report =
      filter_consistency(psi_id, identity_channel(2));
  CHECK(id_report.pass);
  CHECK(id_report.max_entry_error < 1e-12);

  for (int rep = 0; rep < 6; ++rep) {
    const PureState psi = random_pure(3, 3, derive_seed(52, std::uint64_t(rep)));
    const KrausChannel ch =
        random_channel(3, 1 + rep % 3, derive_seed(53, std::uint64_t(rep)));
    const FilterConsistencyReport report = filter_consistency(psi, ch);
    CHECK(report.pass);
    CHECK(report.max_entry_error < 1e-9);
  }

  const PureState psi = random_pure(3, 3, 54);
  const FilterConsistencyReport filt =
      filter_consistency(psi, random_filter(3, 55));
  CHECK(filt.pass);
  CHECK(filt.p_residual < 1e-10);
  CHECK(filt.p_double_prime < 1.0);  // genuinely trace-decreasing
}

TEST_CASE("kraus validation rejects super-unital families") {
  Matrix k = 1.2 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(single_filter(k), ContractError);
  CHECK_THROWS_AS(KrausChannel({}), DomainError);
}

TEST_CASE("random filters are trace-nonincreasing with unit top singular value") {
  const KrausChannel ch = random_filter(3, 56);
  CHECK(ch.kraus().size() == 1);
  CHECK(singular_values(ch.kraus().front())(0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(ch.cptp());
}

TEST_CASE("normalize rescales to unit trace and rejects near-zero weight") {
  const DensityOperator rho = random_bipartite(2, 2, 2, 57);
  const DensityOperator half = rho.scaled(0.5);
  CHECK(normalize(half).weight() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((normalize(half).matrix() - rho.matrix()).norm() < 1e-12);
}

TEST_CASE("apply_to_pure matches apply on rank-1 channels") {
  const PureState psi = random_pure(3, 3, 58);
  const KrausChannel ch = random_filter(3, 59);
  const PureState out = apply_to_pure(psi, ch, Side::B);
  const Matrix via_density =
      apply(density_from_pure(psi), ch, Side::B).output.matrix();
  CHECK((density_from_pure(out).matrix() - via_density).norm() < 1e-12);
  CHECK_THROWS_AS(apply_to_pure(psi, random_channel(3, 2, 60), Side::B),
                  DomainError);
}

}  // TEST_SUITE
