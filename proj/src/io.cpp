#include "qbound/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace qbound {

RunManifest make_manifest(std::string command,
                          std::vector<std::string> inputs,
                          std::uint64_t seed) {
  RunManifest m;
  m.command = std::move(command);
  m.inputs = std::move(inputs);
  m.seed = seed;
  char buf[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  m.timestamp = buf;
  return m;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

json json_number(double x) { return json(round12(x)); }

json json_vector(const RVector& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(json_number(x));
  return arr;
}

json to_json(const RunManifest& manifest) {
  return json{{"command", manifest.command},
              {"inputs", manifest.inputs},
              {"seed", manifest.seed},
              {"tool_version", manifest.tool_version},
              {"timestamp", manifest.timestamp}};
}

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(json::array(
          {json_number(m(i, j).real()), json_number(m(i, j).imag())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Measurement& m) {
  json j{{"label", m.label},
         {"kind", m.kind == MeasurementKind::ProjectiveBasis ? "projective"
                                                             : "povm"}};
  if (m.kind == MeasurementKind::ProjectiveBasis) {
    json vectors = json::array();
    for (const auto& v : m.vectors) {
      json vec = json::array();
      for (const auto& e : v)
        vec.push_back(
            json::array({json_number(e.real()), json_number(e.imag())}));
      vectors.push_back(std::move(vec));
    }
    j["vectors"] = std::move(vectors);
  } else {
    json elements = json::array();
    for (const auto& e : m.elements) elements.push_back(to_json(e));
    j["elements"] = std::move(elements);
  }
  return j;
}

json to_json(const MeasurementSet& set) {
  json measurements = json::array();
  for (const auto& m : set.measurements) measurements.push_back(to_json(m));
  return json{{"dim", set.dim},
              {"weights", json_vector(set.setting_weights)},
              {"measurements", std::move(measurements)}};
}

json to_json(const DensityState& state) {
  json j{{"dim", state.dim}, {"matrix", to_json(state.matrix)}};
  if (!state.label.empty()) j["label"] = state.label;
  if (state.split)
    j["split"] = json::array({state.split->first, state.split->second});
  return j;
}

namespace {

json to_json(const SubsetSelection& sel) {
  json picks = json::array();
  for (const auto& [x, a] : sel.picks) picks.push_back(json::array({x, a}));
  return picks;
}

}  // namespace

json to_json(const BoundReport& report) {
  json j{{"convention",
          "s(k) maximizes over element subsets of total size k; the steering "
          "bound is s(N)"},
         {"dim", report.dim},
         {"settings", report.settings},
         {"s_sequence", json_vector(report.s_sequence)},
         {"w_vector", json_vector(report.w_vector.components)},
         {"steering_bound", json_number(report.steering_bound)}};
  if (report.entanglement_bound)
    j["entanglement_bound"] = json_number(*report.entanglement_bound);
  if (report.rutkowski_bound)
    j["rutkowski_bound"] = json_number(*report.rutkowski_bound);
  json argmax = json::array();
  for (std::size_t k = 0; k < report.argmax_subsets.size(); ++k)
    argmax.push_back(json{{"k", k + 1},
                          {"picks", to_json(report.argmax_subsets[k])}});
  j["argmax_subsets"] = std::move(argmax);
  if (report.violation_ratios)
    j["violation_ratios"] =
        json{{"V_E_lower", json_number(report.violation_ratios->first)},
             {"V_S_lower", json_number(report.violation_ratios->second)}};
  if (report.spectrum_weighted)
    j["spectrum_weighted"] =
        json{{"lambda", json_vector(report.spectrum_weighted->lambda)},
             {"s_sequence_lambda",
              json_vector(report.spectrum_weighted->s_sequence_lambda)},
             {"steering_bound_lambda",
              json_number(report.spectrum_weighted->steering_bound_lambda)}};
  return j;
}

json to_json(const WitnessReport& report) {
  json j{{"s_q", json_number(report.s_q)},
         {"steering_bound", json_number(report.steering_bound)},
         {"entanglement_bound", json_number(report.entanglement_bound)},
         {"steerable_flag", report.steerable},
         {"entangled_flag", report.entangled},
         {"violation_margins",
          json{{"steering", json_number(report.steering_margin)},
               {"entanglement", json_number(report.entanglement_margin)}}}};
  if (report.rutkowski_bound)
    j["rutkowski_bound"] = json_number(*report.rutkowski_bound);
  return j;
}

json to_json(const VerificationReport& report) {
  return json{{"suite", report.suite},
              {"samples", report.samples},
              {"violations", report.violations},
              {"worst_margin", json_number(report.worst_margin)},
              {"seed", report.seed}};
}

json to_json(const WernerThresholds& thresholds) {
  // thresholds print at 7 significant digits
  auto r7 = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.7g", x);
    return json(std::strtod(buf, nullptr));
  };
  return json{{"steering", r7(thresholds.steering_closed)},
              {"entanglement", r7(thresholds.entanglement_closed)},
              {"steering_bisected", r7(thresholds.steering_bisected)},
              {"entanglement_bisected", r7(thresholds.entanglement_bisected)}};
}

namespace {

cdouble parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorCode::ParseError, "complex number must be [re, im]");
  return cdouble(j[0].get<double>(), j[1].get<double>());
}

CVector parse_ket(const json& j) {
  if (!j.is_array() || j.empty())
    fail(ErrorCode::ParseError, "vector must be a non-empty array");
  CVector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(parse_complex(e));
  return v;
}

}  // namespace

ComplexMatrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty())
    fail(ErrorCode::ParseError, "matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(ErrorCode::ParseError, "matrix rows must be arrays");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail(ErrorCode::ParseError, "matrix rows have unequal lengths");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_complex(j[i][k]);
  }
  return m;
}

Measurement parse_measurement(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "measurement must be an object");
  const std::string label = j.value("label", std::string{});
  std::string kind = j.value("kind", std::string{});
  if (kind == "ProjectiveBasis") kind = "projective";
  if (kind == "POVM") kind = "povm";
  if (kind == "projective") {
    if (!j.contains("vectors"))
      fail(ErrorCode::ParseError, "projective measurement needs \"vectors\"");
    std::vector<CVector> vectors;
    for (const auto& v : j.at("vectors")) vectors.push_back(parse_ket(v));
    return make_projective_measurement(vectors, label);
  }
  if (kind == "povm") {
    if (!j.contains("elements"))
      fail(ErrorCode::ParseError, "povm measurement needs \"elements\"");
    std::vector<ComplexMatrix> elements;
    for (const auto& e : j.at("elements")) elements.push_back(parse_matrix(e));
    return make_povm(elements, label);
  }
  fail(ErrorCode::ParseError, "kind must be \"projective\" or \"povm\"");
}

MeasurementSet parse_measurement_set(const json& j) {
  if (!j.is_object())
    fail(ErrorCode::ParseError, "measurement set must be an object");
  if (!j.contains("measurements"))
    fail(ErrorCode::ParseError, "measurement set needs \"measurements\"");
  std::vector<Measurement> measurements;
  for (const auto& m : j.at("measurements"))
    measurements.push_back(parse_measurement(m));
  RVector weights;
  if (j.contains("weights"))
    for (const auto& w : j.at("weights")) {
      if (!w.is_number()) fail(ErrorCode::ParseError, "weights must be numbers");
      weights.push_back(w.get<double>());
    }
  MeasurementSet set = make_measurement_set(std::move(measurements),
                                            std::move(weights));
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != set.dim)
    fail(ErrorCode::ParseError, "declared dim differs from the measurements");
  return set;
}

DensityState parse_density_state(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "state must be an object");
  if (!j.contains("matrix")) fail(ErrorCode::ParseError, "state needs \"matrix\"");
  ComplexMatrix m = parse_matrix(j.at("matrix"));
  std::optional<std::pair<std::size_t, std::size_t>> split;
  if (j.contains("split")) {
    const auto& s = j.at("split");
    if (!s.is_array() || s.size() != 2)
      fail(ErrorCode::ParseError, "split must be [dA, dB]");
    split = std::make_pair(s[0].get<std::size_t>(), s[1].get<std::size_t>());
  }
  DensityState state =
      make_density_state(std::move(m), j.value("label", std::string{}), split);
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != state.dim)
    fail(ErrorCode::ParseError, "declared dim differs from the matrix");
  return state;
}

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
  return j;
}

}  // namespace

MeasurementSet load_measurement_set(const std::string& path) {
  return parse_measurement_set(load_json(path));
}

DensityState load_density_state(const std::string& path) {
  return parse_density_state(load_json(path));
}

MeasurementSet builtin_set(const std::string& name) {
  if (name == "pauli-zx") return pauli_zx_set();
  if (name == "pauli-zx-anti") return pauli_zx_anti_set();
  if (name == "gellmann-148") return gellmann_148_set();
  if (name.rfind("fig2:", 0) == 0) {
    const std::string arg = name.substr(5);
    char* end = nullptr;
    const double theta = std::strtod(arg.c_str(), &end);
    if (end == arg.c_str() || *end != '\0' || !std::isfinite(theta))
      fail(ErrorCode::ParseError, "fig2 builtin needs fig2:<theta>");
    return fig2_set(theta);
  }
  fail(ErrorCode::ParseError, "unknown builtin set: " + name);
}

std::string csv_row(const RVector& values) {
  std::string row;
  char buf[40];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", values[i]);
    if (i) row += ',';
    row += buf;
  }
  row += '\n';
  return row;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot write " + path);
  out << content;
}

}  // namespace qbound
