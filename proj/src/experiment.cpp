#include "steiner/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "steiner/errors.hpp"
#include "steiner/measures.hpp"
#include "steiner/pgm.hpp"
#include "steiner/symmetrizer.hpp"

namespace steiner {
namespace {

constexpr int kScalarColumns = 8;

std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw IoError("malformed number in trace: " + s);
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string header(int dim) {
  std::string h = "step";
  for (int k = 1; k <= dim; ++k) h += ",u" + std::to_string(k);
  h += ",volume,volume_drift,nikodym_to_ball,moment,moment_excess,barycenter_norm,perimeter_tv,wall_time_ms";
  return h;
}

std::filesystem::path snapshot_path(const std::filesystem::path& dir, int step) {
  char name[32];
  std::snprintf(name, sizeof(name), "step_%06d.pgm", step);
  return dir / name;
}

}  // namespace

void RunConfig::validate() const {
  if (steps < 0) throw ConfigInvalid("steps must be non-negative");
  if (snapshot_every && *snapshot_every < 1) throw ConfigInvalid("snapshot interval must be at least 1");
  if (stop_epsilon && !(*stop_epsilon >= 0.0)) throw ConfigInvalid("stop epsilon must be non-negative");
}

RunResult run(const RunConfig& config) {
  config.validate();
  const GridSpec& grid = config.grid;
  const int d = grid.dim();
  DirectionSource source(config.directions, d);

  OccupancyField field = rasterize(config.shape, grid);
  const double volume0 = volume(field);
  if (volume0 < empty_threshold(grid)) throw ConfigInvalid("initial shape is empty on this grid");
  const double rho = equivalent_ball_radius(volume0, d);
  const OccupancyField ball = ball_field(rho, grid);
  const double moment_ref = moment_unit_ball(d) * std::pow(rho, d + 2);

  if (config.snapshot_every) std::filesystem::create_directories(config.snapshot_dir);

  RunResult result{{}, field, rho};
  auto record = [&](int step, const Vec& u, double ms) {
    StepRecord r;
    r.step = step;
    r.direction = u;
    r.volume = volume(field);
    r.volume_drift = (r.volume - volume0) / volume0;
    r.nikodym_to_ball = nikodym_distance(field, ball);
    r.moment = moment_of_inertia(field);
    r.moment_excess = r.moment - moment_ref;
    r.barycenter_norm = norm(barycenter(field));
    r.perimeter_tv = perimeter_tv(field);
    r.wall_time_ms = config.record_timing ? ms : 0.0;
    result.records.push_back(r);
    if (config.snapshot_every && step % *config.snapshot_every == 0) {
      write_snapshot_pgm(field, snapshot_path(config.snapshot_dir, step));
    }
  };
  auto converged = [&] {
    return config.stop_epsilon && result.records.back().nikodym_to_ball <= *config.stop_epsilon * volume0;
  };

  record(0, Vec(d), 0.0);
  for (int n = 1; n <= config.steps && !converged(); ++n) {
    const auto start = std::chrono::steady_clock::now();
    const Direction u = source.next();
    field = steiner_symmetrize(field, u, config.renormalize);
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    record(n, u.vector(), elapsed.count());
  }

  result.final_field = std::move(field);
  if (config.trace_path) write_trace_csv(result.records, d, *config.trace_path);
  return result;
}

void write_trace_csv(std::span<const StepRecord> records, int dim, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << kTraceVersionLine << "\n" << header(dim) << "\n";
  for (const auto& r : records) {
    out << r.step;
    for (int k = 0; k < dim; ++k) out << "," << format_real(r.direction[k]);
    for (double v : {r.volume, r.volume_drift, r.nikodym_to_ball, r.moment, r.moment_excess, r.barycenter_norm,
                     r.perimeter_tv, r.wall_time_ms}) {
      out << "," << format_real(v);
    }
    out << "\n";
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<StepRecord> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kTraceVersionLine) throw IoError("missing trace version line");
  if (!std::getline(in, line)) throw IoError("missing trace header");
  const auto columns = split(line, ',');
  const int dim = static_cast<int>(columns.size()) - 1 - kScalarColumns;
  if ((dim != 2 && dim != 3) || line != header(dim)) throw IoError("unrecognized trace header");

  std::vector<StepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != columns.size()) throw IoError("trace row has the wrong number of columns");
    StepRecord r;
    r.step = static_cast<int>(parse_real(cells[0]));
    r.direction = Vec(dim);
    for (int k = 0; k < dim; ++k) r.direction[k] = parse_real(cells[static_cast<std::size_t>(1 + k)]);
    const auto base = static_cast<std::size_t>(1 + dim);
    double* fields[] = {&r.volume, &r.volume_drift, &r.nikodym_to_ball, &r.moment, &r.moment_excess,
                        &r.barycenter_norm, &r.perimeter_tv, &r.wall_time_ms};
    for (std::size_t c = 0; c < kScalarColumns; ++c) *fields[c] = parse_real(cells[base + c]);
    records.push_back(r);
  }
  return records;
}

void write_snapshot_pgm(const OccupancyField& field, const std::filesystem::path& path) {
  write_pgm(field_image(field), path);
}

}  // namespace steiner
