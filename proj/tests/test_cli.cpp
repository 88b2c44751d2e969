#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qbound/io.hpp"

using namespace qbound;
namespace fs = std::filesystem;

namespace {

#ifndef QBOUND_CLI_PATH
#error "QBOUND_CLI_PATH must point at the built CLI"
#endif

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / "qbound-cli-tests";
  fs::create_directories(dir);
  const fs::path out = dir / "stdout.txt";
  const std::string cmd = std::string(QBOUND_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  result.stdout_text = ss.str();
  return result;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "qbound-cli-tests";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path) << content;
  return path;
}

json payload_without_timestamps(json j) {
  if (j.contains("manifest")) j["manifest"].erase("timestamp");
  return j;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("bounds on the builtin qubit pair") {
  const RunResult r = run_cli("bounds --builtin pauli-zx");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["steering_bound"].get<double>() ==
        doctest::Approx(1.707106781187).epsilon(1e-9));
  CHECK(j["s_sequence"].size() == 4);
  CHECK(j["manifest"]["command"] == "bounds");
}

TEST_CASE("bounds on the qutrit set reports both routes") {
  const RunResult r = run_cli(
      "bounds --builtin gellmann-148 --alice-builtin gellmann-148");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["rutkowski_bound"].get<double>() == doctest::Approx(3.0));
  CHECK(j["steering_bound"].get<double>() ==
        doctest::Approx(2.61803398875).epsilon(1e-9));
  CHECK(j["entanglement_bound"].get<double>() ==
        doctest::Approx(7.0 - 2.0 * std::sqrt(5.0)).epsilon(1e-9));
}

TEST_CASE("bounds rejects invalid files with exit 2") {
  const fs::path bad = write_temp("bad_set.json", R"({
    "measurements": [{"kind": "projective",
                      "vectors": [[[1,0],[0,0]], [[0.9,0],[0.1,0]]]}]})");
  const RunResult r = run_cli("bounds --bob " + bad.string());
  CHECK(r.exit_code == 2);

  const fs::path garbage = write_temp("garbage.json", "{not json");
  CHECK(run_cli("bounds --bob " + garbage.string()).exit_code == 2);
}

TEST_CASE("computation failures on valid files exit 3") {
  // 13 valid settings make a 26-element pool, past the enumeration limit
  json z = json::parse(R"({"kind": "projective",
                           "vectors": [[[1,0],[0,0]], [[0,0],[1,0]]]})");
  json set;
  set["measurements"] = json::array();
  for (int i = 0; i < 13; ++i) set["measurements"].push_back(z);
  const fs::path big = write_temp("big_pool.json", set.dump());
  CHECK(run_cli("bounds --bob " + big.string()).exit_code == 3);
}

TEST_CASE("witness on Werner states") {
  const DensityState strong = werner_state(WernerFamily::Qubit, 0.8);
  const fs::path state = write_temp("werner08.json", to_json(strong).dump());
  const RunResult r =
      run_cli("witness --state " + state.string() +
              " --alice-builtin pauli-zx --builtin pauli-zx-anti");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["steerable_flag"] == true);
  CHECK(j["entangled_flag"] == true);

  // misaligned Bob set plus --maximize-pairing recovers 1 + p
  const DensityState mid = werner_state(WernerFamily::Qubit, 0.65);
  const fs::path state2 = write_temp("werner065.json", to_json(mid).dump());
  const RunResult r2 =
      run_cli("witness --state " + state2.string() +
              " --alice-builtin pauli-zx --builtin pauli-zx"
              " --maximize-pairing");
  REQUIRE(r2.exit_code == 0);
  const json j2 = json::parse(r2.stdout_text);
  CHECK(j2["s_q"].get<double>() == doctest::Approx(1.65).epsilon(1e-9));
  CHECK(j2["entangled_flag"] == true);
  CHECK(j2["steerable_flag"] == false);
}

TEST_CASE("witness keeps both flags down on a product state") {
  const DensityState a = random_state(2, StatePurity::Mixed, 8);
  const DensityState b = random_state(2, StatePurity::Mixed, 9);
  const DensityState product = make_density_state(
      kron(a.matrix, b.matrix), "product", std::make_pair(2u, 2u));
  const fs::path state = write_temp("product.json", to_json(product).dump());
  const RunResult r =
      run_cli("witness --state " + state.string() +
              " --alice-builtin pauli-zx --builtin pauli-zx-anti");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["steerable_flag"] == false);
  CHECK(j["entangled_flag"] == false);
}

TEST_CASE("sweep emits ordered rows") {
  const RunResult r = run_cli("sweep-fig2 --steps 20");
  REQUIRE(r.exit_code == 0);
  std::stringstream ss(r.stdout_text);
  std::string line;
  std::getline(ss, line);
  CHECK(line.rfind("# manifest:", 0) == 0);
  std::getline(ss, line);
  CHECK(line == "theta,rutkowski,steering_bound,entanglement_bound");
  std::size_t rows = 0;
  double prev_theta = -1.0;
  while (std::getline(ss, line)) {
    double theta, rut, steer, ent;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &theta, &rut, &steer,
                        &ent) == 4);
    CHECK(theta > prev_theta);
    prev_theta = theta;
    CHECK(ent <= steer + 1e-9);
    CHECK(steer <= rut + 1e-9);
    ++rows;
  }
  CHECK(rows == 20);

  CHECK(run_cli("sweep-fig2 --theta-min 1.0 --theta-max 0.5").exit_code == 2);
}

TEST_CASE("werner thresholds through the CLI") {
  const RunResult qubit = run_cli("werner --family qubit --grid 21");
  REQUIRE(qubit.exit_code == 0);
  const json jq = json::parse(qubit.stdout_text);
  CHECK(jq["steering"].get<double>() == doctest::Approx(0.7071068).epsilon(1e-6));
  CHECK(jq["entanglement"].get<double>() ==
        doctest::Approx(0.5857864).epsilon(1e-6));

  const RunResult qutrit = run_cli("werner --family qutrit --grid 21");
  REQUIRE(qutrit.exit_code == 0);
  const json jt = json::parse(qutrit.stdout_text);
  CHECK(jt["steering"].get<double>() == doctest::Approx(0.8090170).epsilon(1e-6));
  CHECK(jt["entanglement"].get<double>() ==
        doctest::Approx(0.7639320).epsilon(1e-6));
  CHECK(jt["rutkowski_threshold"] == "none <= 1");
}

TEST_CASE("werner writes JSON and CSV files") {
  const fs::path dir = fs::temp_directory_path() / "qbound-cli-tests";
  const fs::path out = dir / "thresholds.json";
  const fs::path csv = dir / "sweep.csv";
  const RunResult r = run_cli("werner --family qubit --grid 11 --out " +
                              out.string() + " --out-csv " + csv.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream jf(out);
  REQUIRE(jf.good());
  json j;
  jf >> j;
  CHECK(j["family"] == "qubit");
  std::ifstream cf(csv);
  std::string header;
  std::getline(cf, header);  // manifest comment
  std::getline(cf, header);
  CHECK(header == "p,s_q,steerable,entangled");
}

TEST_CASE("zeta through the CLI") {
  const RunResult r = run_cli(
      "zeta --alice-builtin pauli-zx --builtin pauli-zx --outcomes 0,0"
      " --class quantum");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["zeta_quantum"].get<double>() == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(j["zeta_fgur"].get<double>() ==
        doctest::Approx(0.853553390593).epsilon(1e-9));

  const RunResult s = run_cli(
      "zeta --alice-builtin pauli-zx --builtin pauli-zx --outcomes 0,0"
      " --class separable --restarts 10");
  REQUIRE(s.exit_code == 0);
  const json js = json::parse(s.stdout_text);
  CHECK(js["separable_below_quantum"] == true);
  CHECK(js["zeta_separable"].get<double>() <= 0.75 + 1e-9);
}

TEST_CASE("verify is clean and honors suite selection") {
  const RunResult r = run_cli("verify --suite majorization --samples 200");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["violations"] == 0);
  CHECK(j["suites"].size() == 1);
  CHECK(j["suites"][0]["suite"] == "majorization");

  CHECK(run_cli("verify --suite bogus").exit_code == 2);
}

TEST_CASE("numeric payloads are byte-deterministic for a fixed seed") {
  const std::string cmd =
      "verify --suite zeta --samples 40 --seed 99";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(payload_without_timestamps(json::parse(a.stdout_text)) ==
        payload_without_timestamps(json::parse(b.stdout_text)));

  const RunResult c = run_cli("bounds --builtin gellmann-148");
  const RunResult d = run_cli("bounds --builtin gellmann-148");
  CHECK(payload_without_timestamps(json::parse(c.stdout_text)) ==
        payload_without_timestamps(json::parse(d.stdout_text)));
}

TEST_SUITE_END();
