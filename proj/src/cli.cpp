#include "steiner/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "steiner/errors.hpp"
#include "steiner/experiment.hpp"
#include "steiner/measures.hpp"
#include "steiner/oracle_suite.hpp"

namespace steiner {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigInvalid("");
    return v;
  } catch (const std::exception&) {
    throw ConfigInvalid("not a number: '" + s + "'");
  }
}

std::vector<double> numbers(const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(number(p));
  return out;
}

Vec point(const std::string& s, int dim) {
  const auto xs = numbers(s);
  if (static_cast<int>(xs.size()) != dim) {
    throw ConfigInvalid("expected " + std::to_string(dim) + " coordinates in '" + s + "'");
  }
  Vec v(dim);
  for (int k = 0; k < dim; ++k) v[k] = xs[static_cast<std::size_t>(k)];
  return v;
}

Box box(const std::string& s, int dim) {
  const auto parts = split(s, ';');
  if (parts.size() != 2) throw ConfigInvalid("box needs 'lo;hi', got '" + s + "'");
  return Box(point(parts[0], dim), point(parts[1], dim));
}

void print_report(const OracleSuiteReport& r) {
  std::printf("case axis volume err@%d err@%d rel_err@%d\n", r.coarse_resolution, r.fine_resolution,
              r.fine_resolution);
  for (std::size_t i = 0; i < r.cases.size(); ++i) {
    const auto& c = r.cases[i];
    std::printf("%4zu %4d %.6f %.6f %.6f %.6f\n", i, c.axis + 1, c.volume, c.error_coarse, c.error_fine,
                c.error_fine / c.volume);
  }
  std::printf("max relative deviation %.6f (limit %.3f)\n", r.max_relative_error, r.tolerance);
  std::printf("error shrink ratio %.4f (required >= %.2f)\n", r.shrink_ratio, r.required_ratio);
  std::printf("%s\n", r.passed() ? "PASS" : "FAIL");
}

}  // namespace

ShapeSpec parse_shape(const std::string& name, const std::string& args, int dim, double target_volume) {
  std::optional<double> target;
  if (target_volume > 0.0) target = target_volume;

  ShapeSpec spec;
  if (name == "ball") {
    if (args.empty()) {
      spec = default_ball(dim);
    } else {
      const auto parts = split(args, ';');
      if (parts.size() > 2) throw ConfigInvalid("ball args are 'r' or 'r;center'");
      spec.variant = BallShape{parts.size() == 2 ? point(parts[1], dim) : Vec(dim), number(parts[0])};
    }
  } else if (name == "box") {
    Vec lo(dim), hi(dim);
    for (int k = 0; k < dim; ++k) lo[k] = -0.5, hi[k] = 0.5;
    const Box b = args.empty() ? Box(lo, hi) : box(args, dim);
    spec.variant = BoxShape{b.lo, b.hi};
  } else if (name == "box-union") {
    if (args.empty()) {
      spec = default_box_union(dim);
    } else {
      BoxUnionShape s;
      for (const auto& part : split(args, '|')) s.boxes.push_back(box(part, dim));
      spec.variant = s;
    }
  } else if (name == "l-shape") {
    spec.variant = LShape{args.empty() ? 1.0 : number(args)};
  } else if (name == "annulus") {
    if (args.empty()) {
      spec = default_annulus(dim);
    } else {
      const auto r = numbers(args);
      if (r.size() != 2) throw ConfigInvalid("annulus args are 'r_in,r_out'");
      spec.variant = AnnulusShape{r[0], r[1]};
    }
  } else if (name == "two-balls") {
    if (args.empty()) {
      spec = default_two_balls(dim);
    } else {
      const auto balls = split(args, '|');
      if (balls.size() != 2) throw ConfigInvalid("two-balls args are 'c;r|c;r'");
      TwoBallsShape s;
      for (std::size_t i = 0; i < 2; ++i) {
        const auto parts = split(balls[i], ';');
        if (parts.size() != 2) throw ConfigInvalid("two-balls args are 'c;r|c;r'");
        s.centers[i] = point(parts[0], dim);
        s.radii[i] = number(parts[1]);
        if (!(s.radii[i] > 0.0)) throw ConfigInvalid("ball radius must be positive");
      }
      spec.variant = s;
    }
  } else if (name == "mask") {
    if (args.empty()) throw ConfigInvalid("mask shape needs a PGM path in --shape-args");
    spec.variant = MaskShape{args};
  } else {
    throw ConfigInvalid("unknown shape '" + name + "'");
  }
  spec.normalize_volume_to = target;
  return spec;
}

DirectionPolicy parse_directions(const std::string& spec, int dim, std::uint64_t seed) {
  if (spec == "uniform") return IidUniform{seed};
  if (spec == "equidistributed") return Equidistributed{};
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "cyclic") {
    Cyclic c;
    for (const auto& part : split(arg, ';')) {
      if (!part.empty()) c.list.push_back(canonicalize(point(part, dim)));
    }
    if (c.list.empty()) throw EmptyCycle("cyclic direction list is empty");
    return c;
  }
  if (kind == "axis-biased") {
    const double k = arg.empty() ? 1.0 : number(arg);
    if (!(k >= 0.0)) throw ConfigInvalid("axis-biased exponent must be non-negative");
    return AxisBiased{seed, k};
  }
  throw ConfigInvalid("unknown direction policy '" + spec + "'");
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Random Steiner symmetrization of occupancy fields"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Symmetrize a shape repeatedly and record diagnostics");
  int dim = 2;
  int resolution = 256;
  double extent = 2.0;
  std::string shape = "l-shape";
  std::string shape_args;
  std::optional<double> target_volume;
  int steps = 300;
  std::uint64_t seed = 0;
  std::string directions = "uniform";
  bool renormalize = false;
  std::string trace;
  std::optional<int> snapshot_every;
  std::string snapshot_dir = ".";
  std::optional<double> stop_epsilon;
  bool timing = false;
  run_cmd->add_option("--dim", dim, "Dimension (2 or 3)")->check(CLI::IsMember({2, 3}))->capture_default_str();
  run_cmd->add_option("--resolution", resolution, "Cells per axis (>= 8)")->capture_default_str();
  run_cmd->add_option("--extent", extent, "Half-width R of the domain [-R, R]^d")->capture_default_str();
  run_cmd->add_option("--shape", shape, "ball | box | box-union | l-shape | annulus | two-balls | mask")
      ->capture_default_str();
  run_cmd->add_option("--shape-args", shape_args, "Shape parameters (see README)");
  run_cmd->add_option("--volume", target_volume,
                      "Normalize the shape to this volume (default kappa_d, masks unnormalized; <= 0 disables)");
  run_cmd->add_option("--steps", steps, "Number of symmetrizations")->capture_default_str();
  run_cmd->add_option("--seed", seed, "Seed of random direction policies")->capture_default_str();
  run_cmd->add_option("--directions", directions,
                      "uniform | equidistributed | cyclic:<u1;u2;...> | axis-biased:<k>")
      ->capture_default_str();
  run_cmd->add_flag("--renormalize", renormalize, "Rescale every symmetral to the input volume");
  run_cmd->add_option("--trace", trace, "Trace CSV output path");
  run_cmd->add_option("--snapshot-every", snapshot_every, "Write a PGM snapshot every n steps");
  run_cmd->add_option("--snapshot-dir", snapshot_dir, "Snapshot directory")->capture_default_str();
  run_cmd->add_option("--stop-epsilon", stop_epsilon, "Stop once d_N to the ball <= eps * volume");
  run_cmd->add_flag("--timing", timing, "Record wall time per step (traces are then not reproducible)");

  // oracle-check
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare the raster symmetrizer with the exact box oracle");
  int oracle_cases = 10;
  std::uint64_t oracle_seed = 1;
  oracle_cmd->add_option("--cases", oracle_cases, "Random box unions")->capture_default_str();
  oracle_cmd->add_option("--seed", oracle_seed, "Generator seed")->capture_default_str();

  // sampler-check
  auto* sampler_cmd = app.add_subcommand("sampler-check", "Validate the uniform direction sampler");
  std::uint64_t samples = 100000;
  int sampler_dim = 2;
  std::uint64_t sampler_seed = 1;
  sampler_cmd->add_option("--samples", samples, "Number of samples")->capture_default_str();
  sampler_cmd->add_option("--dim", sampler_dim, "Dimension (2 or 3)")
      ->check(CLI::IsMember({2, 3}))
      ->capture_default_str();
  sampler_cmd->add_option("--seed", sampler_seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      RunConfig config;
      config.grid = GridSpec(dim, resolution, extent);
      const double target = target_volume ? *target_volume : (shape == "mask" ? 0.0 : unit_ball_volume(dim));
      config.shape = parse_shape(shape, shape_args, dim, target);
      config.directions = parse_directions(directions, dim, seed);
      config.steps = steps;
      config.renormalize = renormalize;
      config.snapshot_every = snapshot_every;
      config.snapshot_dir = snapshot_dir;
      if (!trace.empty()) config.trace_path = trace;
      config.stop_epsilon = stop_epsilon;
      config.record_timing = timing;
      const RunResult result = run(config);
      const StepRecord& last = result.records.back();
      const double v0 = result.records.front().volume;
      std::printf("steps %d  volume %.6f (drift %+.3e)  d_N/volume %.6f  moment_excess %.6e  |b| %.3e  perimeter %.6f\n",
                  last.step, last.volume, last.volume_drift, last.nikodym_to_ball / v0, last.moment_excess,
                  last.barycenter_norm, last.perimeter_tv);
      return kExitOk;
    }
    if (oracle_cmd->parsed()) {
      if (oracle_cases < 1) {
        std::cerr << "error: --cases must be positive\n" << oracle_cmd->help();
        return kExitUsage;
      }
      const auto report = run_oracle_suite(oracle_seed, oracle_cases);
      print_report(report);
      return report.passed() ? kExitOk : kExitCheckFailed;
    }
    if (sampler_cmd->parsed()) {
      if (samples < 1) {
        std::cerr << "error: --samples must be positive\n" << sampler_cmd->help();
        return kExitUsage;
      }
      DirectionSource source(IidUniform{sampler_seed}, sampler_dim);
      const SamplerReport r = sampler_check(source, samples);
      std::printf("dim %d samples %llu\n", r.dim, static_cast<unsigned long long>(r.samples));
      std::printf("double cap: empirical %.5f analytic %.5f (3 sigma %.5f) %s\n", r.cap_empirical, r.cap_analytic,
                  3.0 * r.cap_sigma, r.cap_ok ? "ok" : "FAIL");
      std::printf("chi-square: %.3f over %d bins, critical %.3f at 0.001 %s\n", r.chi_square, r.bins,
                  r.chi_square_critical, r.uniform_ok ? "ok" : "FAIL");
      return r.passed() ? kExitOk : kExitCheckFailed;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    // Everything else stems from invalid flags or inputs.
    std::cerr << "error: " << e.what() << "\n" << run_cmd->help();
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace steiner
