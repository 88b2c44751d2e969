#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbound/bounds.hpp"
#include "qbound/functionals.hpp"
#include "qbound/oracle.hpp"
#include "qbound/quantum.hpp"

namespace qbound {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "qbound 0.1.0";

// Provenance block embedded in every output file. The timestamp is the only
// field allowed to differ between identical runs.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string timestamp;
};

RunManifest make_manifest(std::string command,
                          std::vector<std::string> inputs, std::uint64_t seed);

// Rounds to 12 significant digits so serialized numbers are stable and
// readable; reports never need more precision than that.
double round12(double x);
json json_number(double x);
json json_vector(const RVector& v);

json to_json(const RunManifest& manifest);
json to_json(const ComplexMatrix& m);
json to_json(const Measurement& m);
json to_json(const MeasurementSet& set);
json to_json(const DensityState& state);
json to_json(const BoundReport& report);
json to_json(const WitnessReport& report);
json to_json(const VerificationReport& report);
json to_json(const WernerThresholds& thresholds);

// Parsers throw Error(ParseError/...) with a field-level message.
ComplexMatrix parse_matrix(const json& j);
Measurement parse_measurement(const json& j);
MeasurementSet parse_measurement_set(const json& j);
DensityState parse_density_state(const json& j);

MeasurementSet load_measurement_set(const std::string& path);
DensityState load_density_state(const std::string& path);

// Named example sets: "pauli-zx", "pauli-zx-anti", "gellmann-148",
// "fig2:<theta>".
MeasurementSet builtin_set(const std::string& name);

// CSV at 12 significant digits, '.' decimal, ',' separator, LF endings.
std::string csv_row(const RVector& values);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qbound
