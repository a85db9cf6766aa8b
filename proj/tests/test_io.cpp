#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "entbound/io.hpp"
#include "entbound/rng.hpp"

using namespace entbound;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("entbound_io_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("state files round-trip bit-identically") {
  TempDir dir;
  const PureState psi = random_pure(3, 4, 314);
  const fs::path file = dir.path / "state.json";
  write_state(psi, file);
  const PureState back = read_state(file);
  CHECK(back.dimA() == 3);
  CHECK(back.dimB() == 4);
  for (Index i = 0; i < psi.amplitudes().size(); ++i) {
    CHECK(back.amplitudes()(i).real() == psi.amplitudes()(i).real());
    CHECK(back.amplitudes()(i).imag() == psi.amplitudes()(i).imag());
  }
}

TEST_CASE("density and channel files round-trip") {
  TempDir dir;
  const DensityOperator rho =
      DensityOperator(2, 2, random_density(4, 2, 315).matrix());
  const fs::path dfile = dir.path / "rho.json";
  write_density(rho, dfile);
  const DensityOperator back = read_density(dfile);
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);

  const KrausChannel ch = random_channel(3, 2, 316);
  const fs::path cfile = dir.path / "ch.json";
  write_channel(ch, cfile);
  const KrausChannel ch_back = read_channel(cfile);
  CHECK(ch_back.kraus().size() == 2);
  CHECK(ch_back.cptp());
  for (std::size_t k = 0; k < 2; ++k)
    CHECK((ch_back.kraus()[k] - ch.kraus()[k]).cwiseAbs().maxCoeff() == 0.0);

  // The loader enforces the completeness inequality.
  const fs::path bad = dir.path / "super.json";
  write_text(bad,
             R"({"dim_in":2,"dim_out":2,"kraus":[[[[1.2,0],[0,0]],[[0,0],[1.2,0]]]]})");
  CHECK_THROWS_AS(read_channel(bad), ParseError);
}

TEST_CASE("parse errors name the offending field") {
  TempDir dir;
  const fs::path bad = dir.path / "bad.json";

  write_text(bad, R"({"dimA":2,"dimB":2,"amplitudes":[[1,0],[0,0],[0,0]]})");
  CHECK_THROWS_WITH_AS(read_state(bad),
                       doctest::Contains("amplitudes"), ParseError);

  write_text(bad, R"({"dimA":2,"amplitudes":[[1,0],[0,0],[0,0],[0,0]]})");
  CHECK_THROWS_WITH_AS(read_state(bad), doctest::Contains("dimB"), ParseError);

  write_text(bad,
             R"({"dimA":2,"dimB":2,"amplitudes":[[1,0],[0,0],[0,0],["x",0]]})");
  CHECK_THROWS_WITH_AS(read_state(bad), doctest::Contains("amplitudes[3]"),
                       ParseError);

  write_text(bad, R"(not json)");
  CHECK_THROWS_AS(read_state(bad), ParseError);
  CHECK_THROWS_AS(read_state(dir.path / "missing.json"), ParseError);

  // A density file whose matrix is not PSD is rejected with context.
  write_text(bad,
             R"({"dimA":1,"dimB":2,"matrix":[[[1,0],[0,0]],[[0,0],[-1,0]]]})");
  CHECK_THROWS_AS(read_density(bad), ParseError);
}

TEST_CASE("gamma files") {
  TempDir dir;
  const fs::path file = dir.path / "gamma.json";
  write_text(file,
             R"({"dim":3,"matrix":[[[0,0],[0,0],[0,0]],
                                   [[1.4142135623730951,0],[0,0],[0,0]],
                                   [[0,0],[1,0],[0,0]]]})");
  const Matrix g = read_gamma(file);
  CHECK((g - spontaneous_decay_gamma()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("trajectory CSV format") {
  Trajectory traj;
  traj.times = {0.0, 0.001};
  traj.raw = {4.0 / 9.0, 0.4443};
  traj.clamped = {4.0 / 9.0, 0.4443};
  traj.trace = {1.0, 1.0};
  traj.purity = {1.0, 0.999};
  std::ostringstream out;
  write_trajectory_csv(traj, out);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "t,raw,clamped,trace,purity");
  std::getline(lines, line);
  CHECK(line == "0,0.444444444444,0.444444444444,1,1");
  std::getline(lines, line);
  CHECK(line.substr(0, 5) == "0.001");
  CHECK(line.find(',') != std::string::npos);
  CHECK(line.find(';') == std::string::npos);
}

TEST_CASE("report JSON carries the documented fields") {
  const VerificationReport report = verify_law(LawId::EQ15, 3, 3, 4, 2);
  const nlohmann::json j = report_to_json(report);
  for (const char* key : {"law_id", "trials", "max_abs_residual", "min_slack",
                          "violations", "worst", "tolerance", "pass", "note"})
    CHECK(j.contains(key));
  CHECK(j["law_id"] == "EQ15");
  CHECK(j["trials"] == 4);
  REQUIRE(!j["worst"].empty());
  for (const char* key : {"seed", "dims", "value"})
    CHECK(j["worst"][0].contains(key));

  // Serialized reports are deterministic.
  CHECK(report_to_json(verify_law(LawId::EQ15, 3, 3, 4, 2)).dump() == j.dump());
}

}  // TEST_SUITE
