// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "entbound/factorization.hpp"
#include "entbound/io.hpp"
#include "entbound/lindblad.hpp"
#include "entbound/rng.hpp"

using namespace entbound;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("%s  %2d. %s (%s)\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

PureState phi_plus(Index d) {
  Vector amps = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) amps(i * d + i) = 1.0 / std::sqrt(double(d));
  return PureState(d, d, amps);
}

Vector two_copies(const PureState& psi) {
  return kron(psi.amplitudes(), psi.amplitudes());
}

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// 1. C^2 from the reduced-purity formula equals the two-copy observable
//    expectation, 200 random states per dimension pair, residual < 1e-9,
//    under 30 s.
void criterion_formula_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (auto [da, db] :
       {std::pair<Index, Index>{2, 2}, {2, 3}, {3, 3}, {3, 4}}) {
    const Matrix a = a_operator(da, db);
    for (int rep = 0; rep < 200; ++rep) {
      const PureState psi = random_pure(
          da, db, derive_seed(101, std::uint64_t(rep + 1000 * da + db)));
      const double c = concurrence_pure(psi);
      const Vector copies = two_copies(psi);
      const double via_observable =
          (copies.adjoint() * a * copies)(0, 0).real();
      worst = std::max(worst, std::abs(c * c - via_observable));
    }
  }
  const double elapsed = seconds_since(start);
  report(1, "formula equivalence C^2 == <Psi Psi|A|Psi Psi>",
         worst < 1e-9 && elapsed < 30.0,
         fmt("max residual %.2e, %.1f s", worst, elapsed));
}

// 2. ALB_{01,01} equals the Wootters oracle on 200 random two-qubit mixed
//    states within 1e-9; Werner spot value at p = 0.9 equals 0.85.
void criterion_two_qubit_exactness() {
  const LocalBasisPair basis = LocalBasisPair::computational(2, 2);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const DensityOperator rho = DensityOperator(
        2, 2,
        random_density(4, 1 + rep % 4, derive_seed(102, std::uint64_t(rep)))
            .matrix());
    const double a = alb(rho, {0, 1}, {0, 1}, basis).bound;
    worst = std::max(worst, std::abs(a - wootters_concurrence(rho)));
  }

  const double p = 0.9;
  const Matrix werner =
      p * density_from_pure(phi_plus(2)).matrix() +
      (1.0 - p) * 0.25 * Matrix::Identity(4, 4);
  const double spot =
      alb(DensityOperator(2, 2, werner), {0, 1}, {0, 1}, basis).bound;
  const double spot_err = std::abs(spot - 0.85);
  report(2, "two-qubit exactness ALB == Wootters",
         worst < 1e-9 && spot_err < 1e-9,
         fmt("max |ALB-W| %.2e, Werner(0.9) err %.2e", worst, spot_err));
}

// 3. Main result: MLB^2 factorization, 100 instances per dimension pair
//    and channel family, residual < 1e-9; identity-channel spot value 0.6.
void criterion_mlb_factorization() {
  double worst = 0.0;
  double worst_p = 1.0;
  for (auto [da, db] : {std::pair<Index, Index>{3, 3}, {4, 4}}) {
    for (int fam = 0; fam < 2; ++fam) {
      const ChannelFamily family =
          fam ? ChannelFamily::SingleKrausFilter : ChannelFamily::Cptp;
      for (int rep = 0; rep < 100; ++rep) {
        const FactorizationInstance inst = make_instance(
            da, db, derive_seed(103, std::uint64_t(rep + 500 * fam + 7 * da)),
            family, WeightFamily::Generic, 0.0, 1 + rep % 4);
        if (family == ChannelFamily::SingleKrausFilter)
          worst_p = std::min(
              worst_p,
              apply(density_from_pure(inst.psi), inst.channel, Side::B).p);
        worst =
            std::max(worst, verify_mlb_factorization(inst).max_abs_residual);
      }
    }
  }

  SchmidtDecomposition s;
  s.dimA = s.dimB = 3;
  s.weights = {0.5, 0.3, 0.2};
  s.basisA = Matrix::Identity(3, 3);
  s.basisB = Matrix::Identity(3, 3);
  const LocalBasisPair basis = LocalBasisPair::schmidt(s);
  const DensityOperator rho =
      density_from_pure(pure_from_schmidt(s.weights, s.basisA, s.basisB));
  const double lhs = mlb_squared(rho, 1, {0, 1}, {0, 1}, basis).raw;
  const double rhs = (9.0 / 4.0) *
                     mlb_squared(density_from_pure(phi_plus(3)), 1, {0, 1},
                                 {0, 1}, basis)
                         .raw *
                     lhs;
  const bool spot_ok =
      std::abs(lhs - 0.6) < 1e-12 && std::abs(rhs - 0.6) < 1e-12;
  report(3, "main result: MLB^2 factorization law",
         worst < 1e-9 && spot_ok && worst_p < 0.999,
         fmt("max residual %.2e, spot lhs %.12f, min p %.3f", worst, lhs,
             worst_p));
}

// 4. ALB laws: pure-channel equality, general inequality, and the
//    invertible-filter equality (including d_A x 2 systems).
void criterion_alb_laws() {
  double worst16 = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const FactorizationInstance inst = make_instance(
        3, 3, derive_seed(104, std::uint64_t(rep)),
        ChannelFamily::SingleKrausFilter, WeightFamily::Generic);
    worst16 = std::max(worst16, verify_alb_pure(inst).max_abs_residual);
  }

  double slack17 = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 200; ++rep) {
    const FactorizationInstance inst = make_instance(
        3, 3, derive_seed(105, std::uint64_t(rep)),
        rep % 2 ? ChannelFamily::SingleKrausFilter : ChannelFamily::Cptp,
        rep % 4 == 3 ? WeightFamily::OneZero : WeightFamily::Generic, 0.0,
        1 + rep % 4);
    slack17 = std::min(slack17, verify_alb_inequality(inst).min_slack);
  }

  double worst_eq = 0.0;
  for (auto [da, db] :
       {std::pair<Index, Index>{3, 3}, {3, 2}, {4, 2}}) {
    for (int rep = 0; rep < 60; ++rep) {
      const FactorizationInstance inst = make_instance(
          da, db, derive_seed(106, std::uint64_t(rep + 100 * da + db)),
          rep % 2 ? ChannelFamily::SingleKrausFilter : ChannelFamily::Cptp,
          WeightFamily::MinWeight, 1e-3, 1 + rep % 4);
      worst_eq = std::max(
          worst_eq, verify_alb_equality_invertible(inst).max_abs_residual);
    }
  }
  report(4, "ALB factorization laws",
         worst16 < 1e-9 && slack17 >= -1e-9 && worst_eq < 1e-8,
         fmt("pure residual %.2e, min slack %.2e, equality residual %.2e",
             worst16, slack17, worst_eq));
}

// 5. Two-qubit concurrence factorization through the Wootters oracle,
//    plus the amplitude-damping closed form 2|ab| sqrt(1-eta).
void criterion_qubit_factorization() {
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const FactorizationInstance inst = make_instance(
        2, 2, derive_seed(107, std::uint64_t(rep)),
        rep % 5 == 4 ? ChannelFamily::SingleKrausFilter : ChannelFamily::Cptp,
        WeightFamily::Generic, 0.0, 1 + rep % 4);
    worst = std::max(worst, verify_qubit_factorization(inst).max_abs_residual);
  }

  const double a2 = 0.64, b2 = 0.36;
  double worst_ad = 0.0;
  for (double eta : {0.1, 0.35, 0.6, 0.85}) {
    SchmidtDecomposition s;
    s.dimA = s.dimB = 2;
    s.weights = {a2, b2};
    s.basisA = Matrix::Identity(2, 2);
    s.basisB = Matrix::Identity(2, 2);
    const PureState psi = pure_from_schmidt(s.weights, s.basisA, s.basisB);
    const DensityOperator out =
        apply(density_from_pure(psi), amplitude_damping(eta), Side::B).output;
    const double expected =
        2.0 * std::sqrt(a2 * b2) * std::sqrt(1.0 - eta);
    worst_ad =
        std::max(worst_ad, std::abs(wootters_concurrence(out) - expected));
  }
  report(5, "two-qubit factorization via the Wootters oracle",
         worst < 1e-8 && worst_ad < 1e-8,
         fmt("max residual %.2e, damping closed form err %.2e", worst,
             worst_ad));
}

// 6. Concurrence upper-bound law (single-Kraus) and the tau law; equality
//    for d_B = 2.
void criterion_upper_laws() {
  double slack11 = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 200; ++rep) {
    const FactorizationInstance inst = make_instance(
        3, 3, derive_seed(108, std::uint64_t(rep)),
        ChannelFamily::SingleKrausFilter, WeightFamily::Generic);
    slack11 = std::min(slack11, verify_concurrence_upper(inst).min_slack);
  }
  double worst_eq = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const FactorizationInstance inst = make_instance(
        3, 2, derive_seed(109, std::uint64_t(rep)),
        ChannelFamily::SingleKrausFilter, WeightFamily::Generic);
    worst_eq =
        std::max(worst_eq, verify_concurrence_upper(inst).max_abs_residual);
  }
  double slack12 = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 100; ++rep) {
    const FactorizationInstance inst = make_instance(
        3, 3, derive_seed(110, std::uint64_t(rep)),
        rep % 2 ? ChannelFamily::SingleKrausFilter : ChannelFamily::Cptp,
        WeightFamily::Generic, 0.0, 2 + rep % 3);
    slack12 = std::min(slack12, verify_tau_upper(inst).min_slack);
  }
  report(6, "concurrence and tau upper-bound laws",
         slack11 >= -1e-9 && worst_eq < 1e-9 && slack12 >= -1e-9,
         fmt("min slack %.2e / %.2e, d_B=2 residual %.2e", slack11, slack12,
             worst_eq));
}

// 7. tau purity identity on 200 random pure states, and the qutrit phi+
//    anchor 4/3 within 1e-12.
void criterion_tau_purity() {
  const LocalBasisPair basis = LocalBasisPair::computational(3, 3);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const PureState psi =
        random_pure(3, 3, derive_seed(111, std::uint64_t(rep)));
    const double c = concurrence_pure(psi);
    worst = std::max(
        worst, std::abs(tau(density_from_pure(psi), basis) - c * c));
  }
  const double anchor =
      std::abs(tau(density_from_pure(phi_plus(3)), basis) - 4.0 / 3.0);
  report(7, "tau purity identity", worst < 1e-9 && anchor < 1e-12,
         fmt("max residual %.2e, phi+ anchor err %.2e", worst, anchor));
}

// 8. Two-qutrit simulation: trace drift, positivity, analytic dephasing,
//    the 4/9 initial value, and the factorization along the flow.
void criterion_simulation() {
  const auto start = std::chrono::steady_clock::now();
  const DensityOperator rho_phi = density_from_pure(phi_plus(3));
  const std::vector<double> weights{0.5, 0.3, 0.2};
  const DensityOperator rho_psi = density_from_pure(pure_from_schmidt(
      weights, Matrix::Identity(3, 3), Matrix::Identity(3, 3)));
  const double factor = 9.0 * weights[1] * weights[2];

  double drift = 0.0, min_eig = 1.0, dephasing_err = 0.0, initial_err = 1.0;
  double factor_err = 0.0;
  for (const Matrix& gamma :
       {spontaneous_decay_gamma(), decoherence_gamma()}) {
    const LindbladModel model{gamma, 1.0, Side::B};
    const Trajectory phi_traj =
        bound_trajectory(evolve(rho_phi, model, 5.0, 1e-3), {1, 2}, {1, 2}, 1);
    for (const auto& state : phi_traj.states) {
      drift = std::max(drift, std::abs(state.weight() - 1.0));
      const Eigen::SelfAdjointEigenSolver<Matrix> eig(state.matrix(),
                                                      Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    }
    initial_err = std::abs(phi_traj.raw.front() - 4.0 / 9.0);

    const Trajectory psi_traj =
        bound_trajectory(evolve(rho_psi, model, 5.0, 1e-3), {1, 2}, {1, 2}, 1);
    for (std::size_t k = 0; k < psi_traj.raw.size(); ++k)
      factor_err = std::max(
          factor_err, std::abs(psi_traj.raw[k] - factor * phi_traj.raw[k]));

    if (gamma(0, 0).real() == 2.0) {  // the dephasing model
      const Matrix& evolved = phi_traj.states[1000].matrix();  // Gamma t = 1
      const Matrix& init = rho_phi.matrix();
      const double rates[3][3] = {
          {0.0, 0.5, 2.0}, {0.5, 0.0, 0.5}, {2.0, 0.5, 0.0}};
      for (Index a = 0; a < 3; ++a)
        for (Index b = 0; b < 3; ++b)
          for (Index m = 0; m < 3; ++m)
            for (Index n = 0; n < 3; ++n) {
              const Complex expected =
                  init(a * 3 + m, b * 3 + n) * std::exp(-rates[m][n]);
              dephasing_err =
                  std::max(dephasing_err,
                           std::abs(evolved(a * 3 + m, b * 3 + n) - expected));
            }
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = drift < 1e-8 && min_eig >= -1e-7 &&
                    dephasing_err < 1e-6 && initial_err < 1e-9 &&
                    factor_err < 1e-7 && elapsed < 60.0;
  report(8, "two-qutrit simulation",
         pass,
         fmt("drift %.1e, min eig %.1e, dephasing %.1e", drift, min_eig,
             dephasing_err) +
             fmt(", init err %.1e, factor err %.1e, %.1f s", initial_err,
                 factor_err, elapsed));
}

// 9. RK4 order: halving dt shrinks the end-state error by a factor in
//    [12, 20] against a dt/4 reference, for both models.
void criterion_rk4_order() {
  const DensityOperator rho0 = density_from_pure(phi_plus(3));
  bool pass = true;
  double ratios[2] = {0.0, 0.0};
  int slot = 0;
  for (const Matrix& gamma :
       {spontaneous_decay_gamma(), decoherence_gamma()}) {
    const LindbladModel model{gamma, 1.0, Side::B};
    const Matrix coarse =
        evolve(rho0, model, 1.0, 0.05, 1e-3).states.back().matrix();
    const Matrix half =
        evolve(rho0, model, 1.0, 0.025, 1e-3).states.back().matrix();
    const Matrix ref =
        evolve(rho0, model, 1.0, 0.0125, 1e-3).states.back().matrix();
    const double ratio = (coarse - ref).norm() / (half - ref).norm();
    ratios[slot++] = ratio;
    pass = pass && ratio >= 12.0 && ratio <= 20.0;
  }
  report(9, "RK4 convergence order", pass,
         fmt("ratios %.2f (decay), %.2f (dephasing)", ratios[0], ratios[1]));
}

// 10. Determinism: randomized reports serialize byte-identically across
//     two runs with the same seeds.
void criterion_determinism() {
  bool pass = true;
  for (LawId law : {LawId::EQ15, LawId::EQ17, LawId::EQ10}) {
    const Index d = law == LawId::EQ10 ? 2 : 3;
    const std::string once =
        report_to_json(verify_law(law, d, d, 25, 991)).dump();
    const std::string twice =
        report_to_json(verify_law(law, d, d, 25, 991)).dump();
    pass = pass && once == twice;
  }
  const std::string scan_once =
      report_to_json(scan_refuted_relations(3, 3, 25, 992)).dump();
  const std::string scan_twice =
      report_to_json(scan_refuted_relations(3, 3, 25, 992)).dump();
  pass = pass && scan_once == scan_twice;
  report(10, "determinism of randomized suites", pass,
         pass ? "byte-identical reports" : "reports differ");
}

}  // namespace

int main() {
  criterion_formula_equivalence();
  criterion_two_qubit_exactness();
  criterion_mlb_factorization();
  criterion_alb_laws();
  criterion_qubit_factorization();
  criterion_upper_laws();
  criterion_tau_purity();
  criterion_simulation();
  criterion_rk4_order();
  criterion_determinism();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
