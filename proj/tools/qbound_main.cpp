// qbound: majorization-based uncertainty bounds and steering/entanglement
// witnesses on the command line.
//
// Exit codes: 0 success, 2 input parse/validation failure, 3 computation
// failure, 4 internal ordering assertion failure (sweep-fig2), 5 verification
// suite violation.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbound/bounds.hpp"
#include "qbound/functionals.hpp"
#include "qbound/io.hpp"
#include "qbound/oracle.hpp"
#include "qbound/quantum.hpp"

namespace {

using namespace qbound;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitMath = 3;
constexpr int kExitAssertion = 4;
constexpr int kExitVerification = 5;

struct ExitWith {
  int code;
  std::string message;
};

[[noreturn]] void bail(int code, const std::string& message) {
  throw ExitWith{code, message};
}

RVector parse_real_list(const std::string& text, const char* what) {
  RVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      bail(kExitParse, std::string(what) + ": cannot parse \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) bail(kExitParse, std::string(what) + ": empty list");
  return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text,
                                          const char* what) {
  std::vector<std::size_t> out;
  for (double v : parse_real_list(text, what)) {
    if (v < 0 || v != std::floor(v))
      bail(kExitParse, std::string(what) + ": indices must be nonnegative");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// Loading and validating an input is a parse-phase action: any library
// error here maps to exit 2 with the offending path in the message.
MeasurementSet load_set(const std::string& file, const std::string& builtin,
                        const char* role) {
  try {
    if (!builtin.empty()) return builtin_set(builtin);
    if (!file.empty()) return load_measurement_set(file);
  } catch (const Error& e) {
    bail(kExitParse, std::string(role) + ": " + e.what());
  }
  bail(kExitParse, std::string(role) + ": no measurement set given");
}

DensityState load_state(const std::string& file) {
  try {
    return load_density_state(file);
  } catch (const Error& e) {
    bail(kExitParse, std::string("state: ") + e.what());
  }
}

std::string g_format = "json";

// flat key,value listing for --format csv; vector entries become key[i]
void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& value : j)
      flatten(value, prefix + "[" + std::to_string(i++) + "]", out);
  } else {
    out += prefix + "," + j.dump() + "\n";
  }
}

void emit(const json& document, const std::string& out_path) {
  std::string text;
  if (g_format == "csv") {
    text = "key,value\n";
    flatten(document, "", text);
  } else {
    text = document.dump(2) + "\n";
  }
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

void emit_csv(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    write_text_file(out_path, content);
}

int cmd_bounds(const std::string& bob_file, const std::string& bob_builtin,
               const std::string& alice_file, const std::string& alice_builtin,
               const std::string& spectrum_text, const std::string& out,
               std::uint64_t seed) {
  const MeasurementSet bob = load_set(bob_file, bob_builtin, "bob");
  std::optional<MeasurementSet> alice;
  if (!alice_file.empty() || !alice_builtin.empty())
    alice = load_set(alice_file, alice_builtin, "alice");
  std::optional<Spectrum> lambda;
  if (!spectrum_text.empty())
    lambda = Spectrum{parse_real_list(spectrum_text, "spectrum")};

  const BoundReport report =
      bound_report(bob, alice ? &*alice : nullptr, lambda ? &*lambda : nullptr);

  std::vector<std::string> inputs;
  if (!bob_file.empty()) inputs.push_back(bob_file);
  if (!alice_file.empty()) inputs.push_back(alice_file);
  json j = to_json(report);
  j["manifest"] = to_json(make_manifest("bounds", inputs, seed));
  emit(j, out);
  return kExitOk;
}

int cmd_witness(const std::string& state_file, const std::string& alice_file,
                const std::string& alice_builtin, const std::string& bob_file,
                const std::string& bob_builtin, bool maximize_pairing,
                const std::string& out, std::uint64_t seed) {
  const DensityState rho = load_state(state_file);
  const MeasurementSet alice = load_set(alice_file, alice_builtin, "alice");
  const MeasurementSet bob = load_set(bob_file, bob_builtin, "bob");

  const WitnessReport report = witness(rho, alice, bob, maximize_pairing);
  json j = to_json(report);
  std::vector<std::string> inputs = {state_file};
  if (!alice_file.empty()) inputs.push_back(alice_file);
  if (!bob_file.empty()) inputs.push_back(bob_file);
  j["manifest"] = to_json(make_manifest("witness", inputs, seed));
  emit(j, out);
  return kExitOk;
}

int cmd_sweep_fig2(double theta_min, double theta_max, std::size_t steps,
                   const std::string& out, std::uint64_t seed) {
  if (!(theta_min >= 0.0) || !(theta_max <= M_PI) || !(theta_min <= theta_max))
    bail(kExitParse,
         "RangeError: theta range must satisfy 0 <= min <= max <= pi");
  if (steps < 2) bail(kExitParse, "RangeError: steps must be at least 2");

  std::string csv;
  csv += "# manifest: " +
         to_json(make_manifest("sweep-fig2", {}, seed)).dump() + "\n";
  csv += "theta,rutkowski,steering_bound,entanglement_bound\n";
  for (std::size_t i = 0; i < steps; ++i) {
    const double theta =
        theta_min + (theta_max - theta_min) * static_cast<double>(i) /
                        static_cast<double>(steps - 1);
    const MeasurementSet set = fig2_set(theta);
    const double steer = steering_bound(set);
    const double ent = entanglement_bound(set, set);
    const double rut = rutkowski_bound(set);
    if (!(ent <= steer + 1e-9) || !(steer <= rut + 1e-9))
      bail(kExitAssertion,
           "bound ordering failed at theta = " + std::to_string(theta));
    csv += csv_row({theta, rut, steer, ent});
  }
  emit_csv(csv, out);
  return kExitOk;
}

int cmd_werner(const std::string& family_name, std::size_t grid,
               const std::string& out, const std::string& out_csv,
               std::uint64_t seed) {
  WernerFamily family;
  if (family_name == "qubit")
    family = WernerFamily::Qubit;
  else if (family_name == "qutrit")
    family = WernerFamily::Qutrit;
  else
    bail(kExitParse, "family must be qubit or qutrit");
  if (grid < 2) bail(kExitParse, "grid must be at least 2");

  const WernerThresholds thresholds = werner_thresholds(family);
  const auto [alice, bob] = werner_measurements(family);

  json j = to_json(thresholds);
  // the maximal-overlap route flags qutrit steering only above p = 1
  const double rut = rutkowski_bound(bob);
  const double slope = family == WernerFamily::Qubit ? 1.0 : 2.0;
  const double rut_threshold = (rut - 1.0) / slope;
  // violation needs p strictly above the threshold, so 1.0 is unattainable
  if (rut_threshold >= 1.0)
    j["rutkowski_threshold"] = "none <= 1";
  else
    j["rutkowski_threshold"] = json_number(rut_threshold);
  j["family"] = family_name;
  j["manifest"] = to_json(make_manifest("werner", {}, seed));
  emit(j, out);

  std::string csv;
  csv += "# manifest: " +
         to_json(make_manifest("werner-sweep", {}, seed)).dump() + "\n";
  csv += "p,s_q,steerable,entangled\n";
  for (std::size_t i = 0; i < grid; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(grid - 1);
    const WitnessReport rep = witness(werner_state(family, p), alice, bob);
    csv += csv_row(
        {p, rep.s_q, rep.steerable ? 1.0 : 0.0, rep.entangled ? 1.0 : 0.0});
  }
  std::string csv_path = out_csv;
  if (csv_path.empty() && !out.empty()) {
    csv_path = out;
    const std::size_t dot = csv_path.rfind('.');
    if (dot != std::string::npos) csv_path.resize(dot);
    csv_path += "_sweep.csv";
  }
  if (!csv_path.empty()) emit_csv(csv, csv_path);
  return kExitOk;
}

int cmd_zeta(const std::string& alice_file, const std::string& alice_builtin,
             const std::string& bob_file, const std::string& bob_builtin,
             const std::string& outcomes_text, const std::string& perm_text,
             const std::string& cls, std::size_t restarts,
             const std::string& out, std::uint64_t seed) {
  const MeasurementSet alice = load_set(alice_file, alice_builtin, "alice");
  const MeasurementSet bob = load_set(bob_file, bob_builtin, "bob");
  const std::vector<std::size_t> a =
      parse_index_list(outcomes_text, "outcomes");
  std::vector<std::size_t> perm;
  if (!perm_text.empty()) {
    perm = parse_index_list(perm_text, "permutation");
  } else {
    perm.resize(bob.dim);
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  }
  if (cls != "quantum" && cls != "separable" && cls != "fgur")
    bail(kExitParse, "class must be quantum, separable or fgur");

  json j;
  j["zeta_quantum"] = json_number(
      zeta_quantum_diagonal(alice, bob, alice.setting_weights, a, perm));
  j["zeta_fgur"] = json_number(zeta_fgur(alice, a));
  if (cls == "separable") {
    const double zs = zeta_separable(alice, bob, alice.setting_weights, a,
                                     perm, restarts, seed);
    j["zeta_separable"] = json_number(zs);
    j["separable_below_quantum"] =
        zs <= j["zeta_quantum"].get<double>() + 1e-9;
  }
  std::vector<std::string> inputs;
  if (!alice_file.empty()) inputs.push_back(alice_file);
  if (!bob_file.empty()) inputs.push_back(bob_file);
  j["manifest"] = to_json(make_manifest("zeta", inputs, seed));
  emit(j, out);
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::size_t samples,
               std::size_t grid_points, const std::string& out,
               std::uint64_t seed) {
  OracleConfig config;
  config.seed = seed;
  config.samples = samples;
  config.grid_points = grid_points;

  std::vector<VerificationReport> reports;
  if (suite == "majorization" || suite == "all")
    reports.push_back(verify_majorization(config));
  if (suite == "steering" || suite == "all")
    reports.push_back(verify_steering(config));
  if (suite == "entanglement" || suite == "all")
    reports.push_back(verify_entanglement(config));
  if (suite == "zeta" || suite == "all")
    reports.push_back(verify_zeta(config));
  if (reports.empty())
    bail(kExitParse,
         "suite must be majorization, steering, entanglement, zeta or all");

  std::size_t violations = 0;
  json arr = json::array();
  for (const auto& r : reports) {
    violations += r.violations;
    arr.push_back(to_json(r));
  }
  json j{{"suites", std::move(arr)},
         {"violations", violations},
         {"manifest", to_json(make_manifest("verify", {}, seed))}};
  emit(j, out);
  return violations == 0 ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"majorization-based uncertainty bounds and quantum"
               " steering/entanglement witnesses"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::uint64_t seed = 42;
  app.add_option("--seed", seed, "random seed for all sampled computations");
  app.add_option("--format", g_format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // bounds
  auto* bounds_cmd =
      app.add_subcommand("bounds", "subset-norm ladder and bound report");
  std::string bob_file, bob_builtin, alice_file, alice_builtin;
  std::string spectrum_text, out_path;
  bounds_cmd->add_option("--bob", bob_file, "Bob measurement-set JSON file");
  bounds_cmd->add_option("--builtin", bob_builtin,
                         "builtin set name for Bob's side");
  bounds_cmd->add_option("--alice", alice_file, "Alice measurement-set file");
  bounds_cmd->add_option("--alice-builtin", alice_builtin,
                         "builtin set name for Alice's side");
  bounds_cmd->add_option("--spectrum", spectrum_text,
                         "reduced-state spectrum, comma separated");
  bounds_cmd->add_option("--out", out_path, "output JSON path");

  // witness
  auto* witness_cmd =
      app.add_subcommand("witness", "steering/entanglement witness report");
  std::string state_file;
  bool maximize_pairing = false;
  witness_cmd->add_option("--state", state_file, "density state JSON file")
      ->required();
  witness_cmd->add_option("--alice", alice_file, "Alice measurement-set file");
  witness_cmd->add_option("--alice-builtin", alice_builtin,
                          "builtin set name for Alice's side");
  witness_cmd->add_option("--bob", bob_file, "Bob measurement-set file");
  witness_cmd->add_option("--builtin", bob_builtin,
                          "builtin set name for Bob's side");
  witness_cmd->add_flag("--maximize-pairing", maximize_pairing,
                        "optimize Bob's outcome order per setting");
  witness_cmd->add_option("--out", out_path, "output JSON path");

  // sweep-fig2
  auto* sweep_cmd = app.add_subcommand(
      "sweep-fig2", "three-bound sweep over the rotated qutrit family");
  double theta_min = 0.0, theta_max = M_PI / 2.0;
  std::size_t steps = 100;
  sweep_cmd->add_option("--theta-min", theta_min, "sweep start (radians)");
  sweep_cmd->add_option("--theta-max", theta_max, "sweep end (radians)");
  sweep_cmd->add_option("--steps", steps, "grid points");
  sweep_cmd->add_option("--out", out_path, "output CSV path");

  // werner
  auto* werner_cmd = app.add_subcommand(
      "werner", "Werner-family thresholds and witness sweep");
  std::string family = "qubit", out_csv;
  std::size_t grid = 101;
  werner_cmd->add_option("--family", family, "qubit or qutrit")->required();
  werner_cmd->add_option("--grid", grid, "sweep grid points");
  werner_cmd->add_option("--out", out_path, "thresholds JSON path");
  werner_cmd->add_option("--out-csv", out_csv, "sweep CSV path");

  // zeta
  auto* zeta_cmd = app.add_subcommand(
      "zeta", "probability-relation bound for an outcome tuple");
  std::string outcomes_text, perm_text, zeta_class = "quantum";
  std::size_t restarts = kSeesawDefaultRestarts;
  zeta_cmd->add_option("--alice", alice_file, "Alice measurement-set file");
  zeta_cmd->add_option("--alice-builtin", alice_builtin,
                       "builtin set name for Alice's side");
  zeta_cmd->add_option("--bob", bob_file, "Bob measurement-set file");
  zeta_cmd->add_option("--builtin", bob_builtin,
                       "builtin set name for Bob's side");
  zeta_cmd
      ->add_option("--outcomes", outcomes_text,
                   "outcome per setting, comma separated")
      ->required();
  zeta_cmd->add_option("--permutation", perm_text,
                       "outcome-label permutation, comma separated");
  zeta_cmd->add_option("--class", zeta_class, "quantum, separable or fgur");
  zeta_cmd->add_option("--restarts", restarts, "seesaw restarts");
  zeta_cmd->add_option("--out", out_path, "output JSON path");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the brute-force verification suites");
  std::string suite = "all";
  std::size_t samples = 1000, grid_points = 24;
  verify_cmd->add_option("--suite", suite,
                         "majorization, steering, entanglement, zeta or all");
  verify_cmd->add_option("--samples", samples, "sample count per suite");
  verify_cmd->add_option("--grid-points", grid_points,
                         "polar grid resolution for the qubit grid oracle");
  verify_cmd->add_option("--out", out_path, "report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (bounds_cmd->parsed())
      return cmd_bounds(bob_file, bob_builtin, alice_file, alice_builtin,
                        spectrum_text, out_path, seed);
    if (witness_cmd->parsed())
      return cmd_witness(state_file, alice_file, alice_builtin, bob_file,
                         bob_builtin, maximize_pairing, out_path, seed);
    if (sweep_cmd->parsed())
      return cmd_sweep_fig2(theta_min, theta_max, steps, out_path, seed);
    if (werner_cmd->parsed())
      return cmd_werner(family, grid, out_path, out_csv, seed);
    if (zeta_cmd->parsed())
      return cmd_zeta(alice_file, alice_builtin, bob_file, bob_builtin,
                      outcomes_text, perm_text, zeta_class, restarts, out_path,
                      seed);
    if (verify_cmd->parsed())
      return cmd_verify(suite, samples, grid_points, out_path, seed);
  } catch (const ExitWith& e) {
    std::cerr << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitMath;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitMath;
  }
  return kExitParse;
}
