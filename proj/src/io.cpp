#include "entbound/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace entbound {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw ParseError("'" + path.string() + "': " + err.what());
  }
  return j;
}

void store_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
}

double finite_number(const json& j, const std::string& field) {
  if (!j.is_number())
    throw ParseError("field '" + field + "' is not a number");
  const double x = j.get<double>();
  if (!std::isfinite(x))
    throw ParseError("field '" + field + "' is not finite");
  return x;
}

Index positive_int(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long>() < 1)
    throw ParseError("field '" + field + "' must be a positive integer");
  return j.get<Index>();
}

Complex complex_entry(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("field '" + field + "' must be an [re, im] pair");
  return {finite_number(j[0], field + "[0]"), finite_number(j[1], field + "[1]")};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Matrix matrix_from_json(const json& j, const std::string& field, Index rows,
                        Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw ParseError("field '" + field + "' must have " +
                     std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError("field '" + row_field + "' must have " +
                       std::to_string(cols) + " entries");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = complex_entry(row[static_cast<std::size_t>(c)],
                              row_field + "[" + std::to_string(c) + "]");
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

const json& require_field(const json& j, const std::string& field) {
  const auto it = j.find(field);
  if (it == j.end()) throw ParseError("missing field '" + field + "'");
  return *it;
}

std::string format_sig12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

PureState state_from_json(const json& j) {
  const Index dim_a = positive_int(require_field(j, "dimA"), "dimA");
  const Index dim_b = positive_int(require_field(j, "dimB"), "dimB");
  const json& amps = require_field(j, "amplitudes");
  if (!amps.is_array() || static_cast<Index>(amps.size()) != dim_a * dim_b)
    throw ParseError("field 'amplitudes' must have dimA*dimB entries");
  Vector v(dim_a * dim_b);
  for (Index i = 0; i < v.size(); ++i)
    v(i) = complex_entry(amps[static_cast<std::size_t>(i)],
                         "amplitudes[" + std::to_string(i) + "]");
  return PureState(dim_a, dim_b, std::move(v));
}

json state_to_json(const PureState& psi) {
  json amps = json::array();
  for (Index i = 0; i < psi.amplitudes().size(); ++i)
    amps.push_back(complex_to_json(psi.amplitudes()(i)));
  return json{{"dimA", psi.dimA()}, {"dimB", psi.dimB()},
              {"amplitudes", std::move(amps)}};
}

PureState read_state(const std::filesystem::path& path) {
  return state_from_json(load_json(path));
}

void write_state(const PureState& psi, const std::filesystem::path& path) {
  store_json(state_to_json(psi), path);
}

DensityOperator read_density(const std::filesystem::path& path) {
  const json j = load_json(path);
  const Index dim_a = positive_int(require_field(j, "dimA"), "dimA");
  const Index dim_b = positive_int(require_field(j, "dimB"), "dimB");
  const Index side = dim_a * dim_b;
  Matrix m = matrix_from_json(require_field(j, "matrix"), "matrix", side, side);
  try {
    return DensityOperator(dim_a, dim_b, std::move(m));
  } catch (const ContractError& err) {
    throw ParseError("'" + path.string() + "': " + err.what());
  }
}

void write_density(const DensityOperator& rho,
                   const std::filesystem::path& path) {
  store_json(json{{"dimA", rho.dimA()},
                  {"dimB", rho.dimB()},
                  {"matrix", matrix_to_json(rho.matrix())}},
             path);
}

KrausChannel read_channel(const std::filesystem::path& path) {
  const json j = load_json(path);
  const Index dim_in = positive_int(require_field(j, "dim_in"), "dim_in");
  const Index dim_out = positive_int(require_field(j, "dim_out"), "dim_out");
  const json& kraus = require_field(j, "kraus");
  if (!kraus.is_array() || kraus.empty())
    throw ParseError("field 'kraus' must be a nonempty array");
  std::vector<Matrix> ks;
  ks.reserve(kraus.size());
  for (std::size_t i = 0; i < kraus.size(); ++i)
    ks.push_back(matrix_from_json(kraus[i], "kraus[" + std::to_string(i) + "]",
                                  dim_out, dim_in));
  try {
    return KrausChannel(std::move(ks));
  } catch (const ContractError& err) {
    throw ParseError("'" + path.string() + "': " + err.what());
  }
}

void write_channel(const KrausChannel& ch, const std::filesystem::path& path) {
  json kraus = json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  store_json(json{{"dim_in", ch.dim_in()},
                  {"dim_out", ch.dim_out()},
                  {"kraus", std::move(kraus)}},
             path);
}

Matrix read_gamma(const std::filesystem::path& path) {
  const json j = load_json(path);
  const Index dim = positive_int(require_field(j, "dim"), "dim");
  return matrix_from_json(require_field(j, "matrix"), "matrix", dim, dim);
}

json report_to_json(const VerificationReport& report) {
  json worst = json::array();
  for (const auto& w : report.worst) {
    json entry{{"seed", w.seed},
               {"dims", json::array({w.dimA, w.dimB})},
               {"value", w.value}};
    if (!w.relation.empty()) entry["relation"] = w.relation;
    worst.push_back(std::move(entry));
  }
  json j{{"law_id", report.law_id},
         {"trials", report.trials},
         {"max_abs_residual", report.max_abs_residual},
         {"min_slack", std::isfinite(report.min_slack) ? report.min_slack : 0.0},
         {"violations", report.violations},
         {"worst", std::move(worst)},
         {"tolerance", report.tolerance},
         {"pass", report.pass},
         {"note", report.note}};
  if (!report.confirms.empty()) j["confirms"] = report.confirms;
  return j;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,raw,clamped,trace,purity\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << format_sig12(traj.times[i]) << ',' << format_sig12(traj.raw[i])
        << ',' << format_sig12(traj.clamped[i]) << ','
        << format_sig12(traj.trace[i]) << ',' << format_sig12(traj.purity[i])
        << '\n';
  }
}

json trajectory_to_json(const Trajectory& traj) {
  return json{{"t", traj.times},
              {"raw", traj.raw},
              {"clamped", traj.clamped},
              {"trace", traj.trace},
              {"purity", traj.purity}};
}

}  // namespace entbound
