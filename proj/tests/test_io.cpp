#include <doctest.h>

#include <cmath>

#include "qbound/io.hpp"
#include "qbound/rng.hpp"

using namespace qbound;

TEST_SUITE_BEGIN("io");

TEST_CASE("round12 trims noise") {
  CHECK(round12(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-13));
  CHECK(round12(2.0) == 2.0);
}

TEST_CASE("measurement set round trip") {
  Rng rng(55);
  std::vector<Measurement> ms;
  for (int x = 0; x < 2; ++x)
    ms.push_back(random_projective_measurement(3, rng));
  const MeasurementSet set = make_measurement_set(std::move(ms), {0.25, 0.75});
  const MeasurementSet back = parse_measurement_set(to_json(set));
  CHECK(back.dim == set.dim);
  CHECK(back.settings() == set.settings());
  CHECK(back.setting_weights[1] == doctest::Approx(0.75));
  for (std::size_t x = 0; x < set.settings(); ++x)
    for (std::size_t a = 0; a < 3; ++a)
      CHECK(back.measurements[x].elements[a].max_abs_diff(
                set.measurements[x].elements[a]) < 1e-11);
}

TEST_CASE("povm round trip") {
  const ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
  const MeasurementSet set =
      make_measurement_set({make_povm({half, half}, "coin")});
  const MeasurementSet back = parse_measurement_set(to_json(set));
  CHECK(back.measurements[0].kind == MeasurementKind::Povm);
  CHECK(back.measurements[0].elements[0].max_abs_diff(half) < 1e-12);
}

TEST_CASE("density state round trip keeps the split") {
  const DensityState rho = werner_state(WernerFamily::Qubit, 0.4);
  const DensityState back = parse_density_state(to_json(rho));
  CHECK(back.dim == 4);
  REQUIRE(back.split.has_value());
  CHECK(back.split->first == 2);
  CHECK(back.matrix.max_abs_diff(rho.matrix) < 1e-11);
}

TEST_CASE("parse rejects malformed documents") {
  CHECK_THROWS_WITH_AS(parse_measurement_set(json::parse("{}")),
                       doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_matrix(json::parse("[[1.0]]")),
                       doctest::Contains("ParseError"), Error);
  // non-orthonormal vectors are rejected during validation
  const json bad = json::parse(R"({
    "measurements": [{"kind": "projective",
                      "vectors": [[[1,0],[0,0]], [[1,0],[0,0]]]}]})");
  CHECK_THROWS_WITH_AS(parse_measurement_set(bad),
                       doctest::Contains("NonOrthonormal"), Error);
}

TEST_CASE("builtin sets") {
  CHECK(builtin_set("pauli-zx").settings() == 2);
  CHECK(builtin_set("pauli-zx-anti").dim == 2);
  CHECK(builtin_set("gellmann-148").pool_size() == 9);
  const MeasurementSet f = builtin_set("fig2:0.5");
  CHECK(f.dim == 3);
  CHECK(f.measurements[2].vectors[0][0].real() ==
        doctest::Approx(std::cos(0.5)));
  CHECK_THROWS_WITH_AS(builtin_set("fig2:abc"), doctest::Contains("ParseError"),
                       Error);
  CHECK_THROWS_WITH_AS(builtin_set("nonsense"), doctest::Contains("ParseError"),
                       Error);
}

TEST_CASE("manifest carries the run context") {
  const RunManifest m = make_manifest("bounds", {"a.json"}, 7);
  const json j = to_json(m);
  CHECK(j["command"] == "bounds");
  CHECK(j["seed"] == 7);
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["timestamp"].get<std::string>().size() == 20);
}

TEST_CASE("csv rows use point decimal and comma separators") {
  CHECK(csv_row({1.0, 0.5, 2.0 / 3.0}) == "1,0.5,0.666666666667\n");
}

TEST_SUITE_END();
