#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "entbound/channels.hpp"
#include "entbound/factorization.hpp"
#include "entbound/lindblad.hpp"

namespace entbound {

// File formats (JSON, complex entries as [re, im] pairs, matrices row-major):
//   state:   {"dimA": int, "dimB": int, "amplitudes": [[re,im], ...]}
//   density: {"dimA": int, "dimB": int, "matrix": [[[re,im], ...], ...]}
//   channel: {"dim_in": int, "dim_out": int, "kraus": [matrix, ...]}
//   gamma:   {"dim": int, "matrix": [[[re,im], ...], ...]}
// Parsers reject non-finite numbers and name the offending field.

PureState read_state(const std::filesystem::path& path);
void write_state(const PureState& psi, const std::filesystem::path& path);

DensityOperator read_density(const std::filesystem::path& path);
void write_density(const DensityOperator& rho,
                   const std::filesystem::path& path);

KrausChannel read_channel(const std::filesystem::path& path);
void write_channel(const KrausChannel& ch, const std::filesystem::path& path);

Matrix read_gamma(const std::filesystem::path& path);

nlohmann::json state_to_json(const PureState& psi);
PureState state_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& report);

// Header t,raw,clamped,trace,purity; 12 significant digits, '.' decimal
// separator regardless of locale.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
nlohmann::json trajectory_to_json(const Trajectory& traj);

}  // namespace entbound
