#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include "steiner/cli.hpp"
#include "steiner/errors.hpp"
#include "steiner/experiment.hpp"
#include "test_support.hpp"

using namespace steiner;
using steiner::testing::temp_path;

namespace {

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "steiner");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

int data_rows(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) n += !line.empty() && line[0] != '#' && line.rfind("step,", 0) != 0;
  return n;
}

}  // namespace

TEST_CASE("run writes one row per step plus the initial state") {
  const auto t = temp_path("cli-300.csv");
  CHECK(cli({"run", "--dim", "2", "--resolution", "256", "--extent", "2", "--shape", "l-shape", "--steps", "300",
             "--seed", "42", "--directions", "uniform", "--trace", t.string()}) == kExitOk);
  CHECK(data_rows(t) == 301);

  const auto z = temp_path("cli-0.csv");
  CHECK(cli({"run", "--steps", "0", "--resolution", "64", "--trace", z.string()}) == kExitOk);
  CHECK(data_rows(z) == 1);
}

TEST_CASE("run options") {
  const auto t = temp_path("cli-opts.csv");
  CHECK(cli({"run", "--dim", "3", "--resolution", "32", "--shape", "two-balls", "--steps", "3", "--directions",
             "equidistributed", "--trace", t.string()}) == kExitOk);
  CHECK(read_trace_csv(t).size() == 4);

  CHECK(cli({"run", "--resolution", "64", "--shape", "box", "--shape-args", "-0.5,-0.5;0.5,0.5", "--steps", "4",
             "--directions", "cyclic:1,0;0,1", "--renormalize", "--trace", t.string()}) == kExitOk);
  const auto rows = read_trace_csv(t);
  REQUIRE(rows.size() == 5);
  CHECK(rows[1].direction == Vec(1.0, 0.0));
  CHECK(rows[2].direction == Vec(0.0, 1.0));

  const auto snaps = temp_path("cli-snaps");
  std::filesystem::remove_all(snaps);
  CHECK(cli({"run", "--resolution", "64", "--steps", "4", "--snapshot-every", "2", "--snapshot-dir", snaps.string(),
             "--directions", "axis-biased:2"}) == kExitOk);
  CHECK(std::filesystem::exists(snaps / "step_000004.pgm"));

  CHECK(cli({"run", "--resolution", "128", "--shape", "two-balls", "--steps", "300", "--stop-epsilon", "0.05",
             "--trace", t.string()}) == kExitOk);
  CHECK(read_trace_csv(t).size() < 301);

  CHECK(cli({"run", "--resolution", "64", "--steps", "2", "--timing", "--trace", t.string()}) == kExitOk);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}) == kExitUsage);
  CHECK(cli({"frobnicate"}) == kExitUsage);
  CHECK(cli({"run", "--no-such-flag"}) == kExitUsage);
  CHECK(cli({"run", "--dim", "4"}) == kExitUsage);
  CHECK(cli({"run", "--steps", "many"}) == kExitUsage);
  CHECK(cli({"run", "--steps", "-1"}) == kExitUsage);
  CHECK(cli({"run", "--resolution", "4"}) == kExitUsage);
  CHECK(cli({"run", "--shape", "triangle"}) == kExitUsage);
  CHECK(cli({"run", "--shape", "annulus", "--shape-args", "1"}) == kExitUsage);
  CHECK(cli({"run", "--shape", "mask"}) == kExitUsage);
  CHECK(cli({"run", "--directions", "sideways"}) == kExitUsage);
  CHECK(cli({"run", "--directions", "cyclic:"}) == kExitUsage);
  CHECK(cli({"run", "--directions", "cyclic:0,0"}) == kExitUsage);
  CHECK(cli({"run", "--snapshot-every", "0"}) == kExitUsage);
  CHECK(cli({"run", "--resolution", "64", "--shape", "ball", "--shape-args", "1.6;0.5,0", "--volume", "0"}) ==
        kExitUsage);
  CHECK(cli({"oracle-check", "--cases", "0"}) == kExitUsage);
  CHECK(cli({"sampler-check", "--samples", "0"}) == kExitUsage);
  CHECK(cli({"sampler-check", "--dim", "5"}) == kExitUsage);
}

TEST_CASE("I/O failures exit with 1") {
  CHECK(cli({"run", "--resolution", "64", "--steps", "1", "--trace", (temp_path("nope") / "x" / "t.csv").string()}) ==
        kExitCheckFailed);
}

TEST_CASE("checks") {
  CHECK(cli({"oracle-check"}) == kExitOk);
  CHECK(cli({"sampler-check", "--dim", "2"}) == kExitOk);
  CHECK(cli({"sampler-check", "--dim", "3", "--samples", "100000"}) == kExitOk);
}

TEST_CASE("parse_shape") {
  const auto ball = parse_shape("ball", "0.5;0.1,0.2", 2, 0.0);
  const auto& b = std::get<BallShape>(ball.variant);
  CHECK(b.radius == 0.5);
  CHECK(b.center == Vec(0.1, 0.2));
  CHECK_FALSE(ball.normalize_volume_to.has_value());

  const auto def = parse_shape("l-shape", "", 3, 2.0);
  CHECK(std::get<LShape>(def.variant).scale == 1.0);
  CHECK(def.normalize_volume_to == 2.0);

  const auto u = parse_shape("box-union", "0,0;1,1|0.5,0.5;2,2", 2, 0.0);
  CHECK(std::get<BoxUnionShape>(u.variant).boxes.size() == 2);

  const auto tb = parse_shape("two-balls", "0.5,0;0.3|-0.5,0;0.2", 2, 0.0);
  CHECK(std::get<TwoBallsShape>(tb.variant).radii[1] == 0.2);

  const auto a = parse_shape("annulus", "0.2,0.9", 2, 0.0);
  CHECK(std::get<AnnulusShape>(a.variant).r_in == 0.2);

  CHECK(std::get<MaskShape>(parse_shape("mask", "m.pgm", 2, 0.0).variant).path == "m.pgm");

  CHECK_THROWS_AS(parse_shape("ball", "0.5;0.1", 2, 0.0), ConfigInvalid);
  CHECK_THROWS_AS(parse_shape("box", "0,0;1", 2, 0.0), ConfigInvalid);
  CHECK_THROWS_AS(parse_shape("box", "1,1;0,0", 2, 0.0), ConfigInvalid);
  CHECK_THROWS_AS(parse_shape("two-balls", "0,0;1", 2, 0.0), ConfigInvalid);
  CHECK_THROWS_AS(parse_shape("l-shape", "big", 2, 0.0), ConfigInvalid);
}

TEST_CASE("parse_directions") {
  CHECK(std::get<IidUniform>(parse_directions("uniform", 2, 9)).seed == 9);
  CHECK(std::holds_alternative<Equidistributed>(parse_directions("equidistributed", 3, 0)));
  const auto c = std::get<Cyclic>(parse_directions("cyclic:0,-2;3,4", 2, 0));
  REQUIRE(c.list.size() == 2);
  CHECK(c.list[0] == Direction::axis(2, 1));
  CHECK(c.list[1][0] == doctest::Approx(0.6));
  const auto ab = std::get<AxisBiased>(parse_directions("axis-biased:3", 2, 4));
  CHECK(ab.exponent == 3.0);
  CHECK(ab.seed == 4);
  CHECK_THROWS_AS(parse_directions("cyclic:", 2, 0), EmptyCycle);
  CHECK_THROWS_AS(parse_directions("cyclic:1,0,0", 2, 0), ConfigInvalid);
  CHECK_THROWS_AS(parse_directions("axis-biased:-1", 2, 0), ConfigInvalid);
  CHECK_THROWS_AS(parse_directions("random", 2, 0), ConfigInvalid);
}
