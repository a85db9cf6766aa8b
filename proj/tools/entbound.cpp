// Command-line front end: bound computation for state files, factorization
// law verification, master-equation simulation, and the refutation scan.
//
// Exit codes: 0 pass, 1 usage/parse error, 2 law violation,
//             3 inconclusive scan, 4 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "entbound/io.hpp"

namespace {

using namespace entbound;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitNumerical = 4;

struct Dims {
  Index a = 0;
  Index b = 0;
};

Dims parse_dims(const std::string& text) {
  const auto sep = text.find('x');
  if (sep == std::string::npos)
    throw DomainError("--dims must look like 3x3");
  Dims dims;
  try {
    dims.a = std::stol(text.substr(0, sep));
    dims.b = std::stol(text.substr(sep + 1));
  } catch (const std::exception&) {
    throw DomainError("--dims must look like 3x3");
  }
  if (dims.a < 2 || dims.b < 2)
    throw DomainError("--dims components must be at least 2");
  return dims;
}

PairIndex parse_pair(const std::string& text, const char* flag) {
  const auto sep = text.find(',');
  if (sep == std::string::npos)
    throw DomainError(std::string(flag) + " must look like 0,1 (0-based levels)");
  PairIndex pair;
  try {
    pair.lo = std::stol(text.substr(0, sep));
    pair.hi = std::stol(text.substr(sep + 1));
  } catch (const std::exception&) {
    throw DomainError(std::string(flag) + " must look like 0,1");
  }
  if (pair.lo < 0 || pair.lo >= pair.hi)
    throw DomainError(std::string(flag) + " needs two distinct ascending levels");
  return pair;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
    out << j.dump(2) << '\n';
  }
}

PureState builtin_phi_plus(Index d) {
  Vector amps = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) amps(i * d + i) = 1.0 / std::sqrt(double(d));
  return PureState(d, d, amps);
}

json pair_bounds_json(const DensityOperator& rho, const EigenSystem& eig,
                      PairIndex pa, PairIndex pb, const LocalBasisPair& basis) {
  const BoundValue a =
      alb_from_eigensystem(eig, rho.dimA(), rho.dimB(), pa, pb, basis);
  const BoundValue m1 = mlb_squared(rho, 1, pa, pb, basis);
  const BoundValue m2 = mlb_squared(rho, 2, pa, pb, basis);
  return json{{"pairA", json::array({pa.lo, pa.hi})},
              {"pairB", json::array({pb.lo, pb.hi})},
              {"alb", a.bound},
              {"mlb1_raw", m1.raw},
              {"mlb1", m1.bound},
              {"mlb2_raw", m2.raw},
              {"mlb2", m2.bound}};
}

int run_bounds(const std::string& state_path, const std::string& density_path,
               const std::string& pair_a, const std::string& pair_b,
               bool schmidt_basis, const std::string& out_path) {
  if (state_path.empty() == density_path.empty())
    throw DomainError("exactly one of --state / --density is required");

  std::optional<PureState> psi;
  std::optional<DensityOperator> rho;
  json report;
  if (!state_path.empty()) {
    psi = read_state(state_path);
    rho = density_from_pure(*psi);
    report["input"] = state_path;
    report["C"] = concurrence_pure(*psi);
  } else {
    rho = read_density(density_path);
    report["input"] = density_path;
  }

  LocalBasisPair basis =
      LocalBasisPair::computational(rho->dimA(), rho->dimB());
  if (schmidt_basis) {
    if (!psi)
      throw DomainError("--schmidt-basis needs a pure --state input");
    basis = LocalBasisPair::schmidt(schmidt_decompose(*psi));
  }
  report["dims"] = json::array({rho->dimA(), rho->dimB()});
  report["basis"] = basis.tag;
  report["tau"] = tau(*rho, basis);

  const EigenSystem eig = herm_eig(rho->matrix());
  json per_pair = json::array();
  if (!pair_a.empty() || !pair_b.empty()) {
    if (pair_a.empty() || pair_b.empty())
      throw DomainError("--pair-a and --pair-b must be given together");
    const PairIndex pa = parse_pair(pair_a, "--pair-a");
    const PairIndex pb = parse_pair(pair_b, "--pair-b");
    validate_pair(pa, rho->dimA());
    validate_pair(pb, rho->dimB());
    per_pair.push_back(pair_bounds_json(*rho, eig, pa, pb, basis));
  } else {
    for (Index i = 0; i < rho->dimA(); ++i)
      for (Index j = i + 1; j < rho->dimA(); ++j)
        for (Index m = 0; m < rho->dimB(); ++m)
          for (Index n = m + 1; n < rho->dimB(); ++n)
            per_pair.push_back(
                pair_bounds_json(*rho, eig, {i, j}, {m, n}, basis));
  }
  report["bounds"] = std::move(per_pair);
  emit(report, out_path);
  return kExitPass;
}

int run_verify(const std::string& law_text, const std::string& dims_text,
               int trials, std::uint64_t seed, const std::string& channel_path,
               const std::string& out_path) {
  const LawId law = parse_law(law_text);
  const Dims dims = parse_dims(dims_text);
  std::optional<KrausChannel> pinned;
  if (!channel_path.empty()) pinned = read_channel(channel_path);
  const VerificationReport report =
      verify_law(law, dims.a, dims.b, trials, seed, pinned);
  emit(report_to_json(report), out_path);
  if (law == LawId::EQ133_SCAN)
    return report.violations > 0 ? kExitPass : kExitInconclusive;
  return report.pass ? kExitPass : kExitViolation;
}

int run_scan(const std::string& dims_text, int trials, std::uint64_t seed,
             const std::string& out_path) {
  const Dims dims = parse_dims(dims_text);
  const VerificationReport report =
      scan_refuted_relations(dims.a, dims.b, trials, seed);
  emit(report_to_json(report), out_path);
  return report.violations > 0 ? kExitPass : kExitInconclusive;
}

int run_simulate(const std::string& model_name, const std::string& gamma_path,
                 const std::string& init, const std::string& pair_a_text,
                 const std::string& pair_b_text, int k, double t_max,
                 double dt, const std::string& out_path,
                 const std::string& format) {
  Matrix gamma;
  if (model_name == "decay") {
    gamma = spontaneous_decay_gamma();
  } else if (model_name == "decoherence") {
    gamma = decoherence_gamma();
  } else if (model_name == "custom") {
    if (gamma_path.empty())
      throw DomainError("--model custom needs --gamma FILE");
    gamma = read_gamma(gamma_path);
  } else {
    throw DomainError("--model must be decay, decoherence or custom");
  }

  std::optional<PureState> psi;
  if (init == "phi+3") {
    psi = builtin_phi_plus(3);
  } else {
    psi = read_state(init);
  }
  const DensityOperator rho0 = density_from_pure(*psi);

  const PairIndex pa = parse_pair(pair_a_text, "--pair");
  const PairIndex pb =
      pair_b_text.empty() ? pa : parse_pair(pair_b_text, "--pair-b");
  validate_pair(pa, rho0.dimA());
  validate_pair(pb, rho0.dimB());

  const LindbladModel model{gamma, 1.0, Side::B};
  const Trajectory traj =
      bound_trajectory(evolve(rho0, model, t_max, dt), pa, pb, k);

  const bool to_stdout = out_path.empty();
  std::ostream& summary = to_stdout ? std::cerr : std::cout;
  if (format == "json") {
    emit(trajectory_to_json(traj), out_path);
  } else if (to_stdout) {
    write_trajectory_csv(traj, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
    write_trajectory_csv(traj, out);
  }

  summary << "initial raw value: " << traj.raw.front() << '\n';
  bool hit_zero = false;
  for (std::size_t i = 0; i < traj.clamped.size(); ++i) {
    if (traj.clamped[i] <= 0.0) {
      summary << "clamped bound first reaches 0 at t = " << traj.times[i]
              << '\n';
      hit_zero = true;
      break;
    }
  }
  if (!hit_zero) summary << "clamped bound stays positive over the horizon\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "entbound: concurrence lower bounds, channel factorization laws and "
      "one-sided Lindblad dynamics for small bipartite systems"};
  app.require_subcommand(1);

  // bounds
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Compute C (pure inputs), ALB, MLB(1)/MLB(2) and tau");
  std::string state_path, density_path, pair_a_text, pair_b_text, out_path;
  bool schmidt_basis = false;
  bounds_cmd->add_option("--state", state_path, "pure state JSON file");
  bounds_cmd->add_option("--density", density_path, "density operator JSON file");
  bounds_cmd->add_option("--pair-a", pair_a_text,
                         "A-side level pair i,j (0-based); default all pairs");
  bounds_cmd->add_option("--pair-b", pair_b_text, "B-side level pair m,n");
  bounds_cmd->add_flag("--schmidt-basis", schmidt_basis,
                       "use the Schmidt basis of the pure input instead of "
                       "the computational basis");
  bounds_cmd->add_option("--out", out_path, "write the JSON report here");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Verify a factorization law on randomized instances");
  std::string law_text, dims_text = "3x3", channel_path, verify_out;
  int trials = 100;
  std::uint64_t seed = 0;
  verify_cmd
      ->add_option("--law", law_text,
                   "EQ10|EQ11|EQ12|EQ15|EQ16|EQ17|EQ17-EQUALITY|EQ133-SCAN")
      ->required();
  verify_cmd->add_option("--dims", dims_text, "system dimensions, e.g. 3x3");
  verify_cmd->add_option("--trials", trials, "number of random instances");
  verify_cmd->add_option("--seed", seed, "master seed (randomized runs need it)")
      ->required();
  verify_cmd->add_option("--channel", channel_path,
                         "pin the channel to this JSON file for every trial");
  verify_cmd->add_option("--out", verify_out, "write the JSON report here");

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Integrate the one-sided master equation and emit the "
                  "MLB^2 trajectory");
  std::string model_name = "decay", gamma_path, init = "phi+3";
  std::string sim_pair = "1,2", sim_pair_b, sim_out, format = "csv";
  int mlb_k = 1;
  double t_max = 5.0, dt = 1e-3;
  sim_cmd->add_option("--model", model_name, "decay|decoherence|custom");
  sim_cmd->add_option("--gamma", gamma_path, "coupling operator JSON file");
  sim_cmd->add_option("--init", init, "initial state: phi+3 or a state file");
  sim_cmd->add_option("--pair", sim_pair,
                      "level pair i,j (0-based) for the bound; the figure "
                      "label 12,12 corresponds to --pair 1,2 under this "
                      "reading");
  sim_cmd->add_option("--pair-b", sim_pair_b,
                      "B-side pair m,n; defaults to --pair");
  sim_cmd->add_option("--k", mlb_k, "MLB variant, 1 or 2")
      ->check(CLI::Range(1, 2));
  sim_cmd->add_option("--tmax", t_max, "horizon in units of Gamma t");
  sim_cmd->add_option("--dt", dt, "integrator step (t is rounded to a whole "
                                  "number of steps)");
  sim_cmd->add_option("--out", sim_out, "write trajectory here (else stdout)");
  sim_cmd->add_option("--format", format, "csv|json");

  // scan
  auto* scan_cmd = app.add_subcommand(
      "scan", "Search for counterexamples to the refuted relations");
  std::string scan_dims = "3x3", scan_out;
  int scan_trials = 100;
  std::uint64_t scan_seed = 0;
  scan_cmd->add_option("--dims", scan_dims, "system dimensions, e.g. 3x3");
  scan_cmd->add_option("--trials", scan_trials, "number of random instances");
  scan_cmd->add_option("--seed", scan_seed, "master seed")->required();
  scan_cmd->add_option("--out", scan_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (bounds_cmd->parsed())
      return run_bounds(state_path, density_path, pair_a_text, pair_b_text,
                        schmidt_basis, out_path);
    if (verify_cmd->parsed())
      return run_verify(law_text, dims_text, trials, seed, channel_path,
                        verify_out);
    if (sim_cmd->parsed())
      return run_simulate(model_name, gamma_path, init, sim_pair, sim_pair_b,
                          mlb_k, t_max, dt, sim_out, format);
    if (scan_cmd->parsed())
      return run_scan(scan_dims, scan_trials, scan_seed, scan_out);
  } catch (const NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
