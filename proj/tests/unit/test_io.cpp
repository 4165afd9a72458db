#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "nehari/config.hpp"
#include "nehari/error.hpp"
#include "nehari/format.hpp"
#include "nehari/snapshot.hpp"

using namespace nehari;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::NoConvergence;  // sentinel: nothing thrown
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("snapshot round trip is bit exact") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-30.0, 30.0);
  Snapshot s;
  s.params.alpha = 0.1 + 1e-17;
  s.params.lambda = 0.1 / 3.0;
  s.grid.M = 100;
  s.grid.R = 17.25;
  for (int k = 0; k < 500; ++k) s.values.push_back(std::exp(U(rng)) * (k % 3 ? 1.0 : 1.0 / 3.0));
  s.values.push_back(5e-324);
  s.solve = SolveInfo{0.25, "Nminus", -1.0 / 7.0, 3e-15, 12};

  const std::string path = std::string(NEHARI_TEST_TMP) + "/snap.json";
  write_snapshot(path, s);
  const Snapshot r = read_snapshot(path);
  REQUIRE(r.values.size() == s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(same_bits(r.values[i], s.values[i]));
  CHECK(same_bits(r.params.alpha, s.params.alpha));
  CHECK(same_bits(*r.params.lambda, *s.params.lambda));
  CHECK(r.grid == s.grid);
  REQUIRE(r.solve.has_value());
  CHECK(*r.solve == *s.solve);
  CHECK(values_checksum(r.values) == values_checksum(s.values));
  CHECK(to_json(r) == to_json(s));
  std::filesystem::remove(path);
}

TEST_CASE("snapshot rejects corrupted documents") {
  Snapshot s;
  s.values = {1.0, 2.0, 3.0};
  std::string text = to_json(s);
  CHECK_NOTHROW(snapshot_from_json(text));
  const auto pos = text.find("2.0", text.find("\"values\""));
  REQUIRE(pos != std::string::npos);
  std::string tampered = text;
  tampered.replace(pos, 3, "2.5");
  CHECK(code_of([&] { snapshot_from_json(tampered); }) == ErrorCode::SnapshotFormat);
  CHECK(code_of([&] { snapshot_from_json("{not json"); }) == ErrorCode::SnapshotFormat);
  CHECK(code_of([&] { snapshot_from_json("{}"); }) == ErrorCode::SnapshotFormat);
  CHECK(code_of([&] { read_snapshot("/nonexistent/x.json"); }) == ErrorCode::SnapshotFormat);
}

TEST_CASE("checksum is sensitive to every bit") {
  std::vector<double> v = {1.0, 2.0};
  const auto c = values_checksum(v);
  v[1] = std::nextafter(2.0, 3.0);
  CHECK(values_checksum(v) != c);
  v = {2.0, 1.0};
  CHECK(values_checksum(v) != c);
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(
      "[problem]\nalpha = 0.3\nq = 0.4\nb_form = constant\nlambda = 0.2\n"
      "[grid]\nM = 128\nR = 15\n"
      "[solver]\ntolerance = 1e-6\npolish = false\n"
      "[sweep]\npoints = 10\nspacing = linear\n"
      "[output]\ndir = out\n[run]\nseed = 7\n");
  CHECK(c.params.alpha == 0.3);
  CHECK(c.params.q == 0.4);
  CHECK(c.params.b_form == BForm::Constant);
  CHECK(*c.params.lambda == 0.2);
  CHECK(c.grid.M == 128);
  CHECK(c.grid.R == 15.0);
  CHECK(c.solver.tolerance == 1e-6);
  CHECK_FALSE(c.solver.polish);
  CHECK(c.sweep.points == 10);
  CHECK(c.sweep.spacing == "linear");
  CHECK(c.output_dir == "out");
  CHECK(c.seed == 7);
  CHECK_NOTHROW(check_config(c));
  CHECK(parse_config("").params.p == 2.0);
}

TEST_CASE("config errors") {
  CHECK(code_of([] { parse_config("[problem]\nalpah = 0.3\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { parse_config("alpha = 0.3\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { parse_config("[grid]\nM = many\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { parse_config("[grid]\nkind = hex\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { parse_config("[problem]\nv_form = other\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { load_config("/nonexistent.ini"); }) == ErrorCode::ConfigError);
  RunConfig c;
  c.solver.tolerance = 0.0;
  c.sweep.points = 2;
  try {
    check_config(c);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() == 2);
  }
}

TEST_CASE("number formatting") {
  CHECK(fmt17(0.1) == "0.10000000000000001");
  CHECK(std::stod(fmt17(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(fmt6(1.0 / 3.0) == "0.333333");
}
