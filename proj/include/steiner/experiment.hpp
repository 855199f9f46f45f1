#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "steiner/directions.hpp"
#include "steiner/grid.hpp"
#include "steiner/shapes.hpp"

namespace steiner {

struct RunConfig {
  GridSpec grid{2, 256, 2.0};
  ShapeSpec shape = default_l_shape(2);
  int steps = 0;
  DirectionPolicy directions = IidUniform{0};
  bool renormalize = false;
  std::optional<int> snapshot_every;
  std::filesystem::path snapshot_dir = ".";
  std::optional<std::filesystem::path> trace_path;
  // Stop once nikodym_to_ball <= stop_epsilon * initial volume.
  std::optional<double> stop_epsilon;
  // Off by default: wall_time_ms is then written as 0 so traces stay reproducible.
  bool record_timing = false;

  // Throws ConfigInvalid.
  void validate() const;
};

// Diagnostics of F_n. Record 0 describes the initial set and carries a zero direction.
struct StepRecord {
  int step = 0;
  Vec direction;
  double volume = 0.0;
  double volume_drift = 0.0;     // relative to step 0
  double nikodym_to_ball = 0.0;  // against B(o, rho(F_0))
  double moment = 0.0;
  double moment_excess = 0.0;    // moment - mu_d rho^(d+2)
  double barycenter_norm = 0.0;
  double perimeter_tv = 0.0;
  double wall_time_ms = 0.0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct RunResult {
  std::vector<StepRecord> records;
  OccupancyField final_field;
  double reference_radius = 0.0;
};

// F_n = S_{u_n} F_{n-1}, directions taken from the source in order. Writes the
// trace and snapshots when the config names them.
RunResult run(const RunConfig& config);

inline constexpr const char* kTraceVersionLine = "#steiner-trace v1";

// CSV with a version comment line, then the header
// step,u1,...,ud,volume,volume_drift,nikodym_to_ball,moment,moment_excess,barycenter_norm,perimeter_tv,wall_time_ms
// Reals use shortest round-trip formatting. Throws IoError.
void write_trace_csv(std::span<const StepRecord> records, int dim, const std::filesystem::path& path);
std::vector<StepRecord> read_trace_csv(const std::filesystem::path& path);

// P5 snapshot (middle slice for 3D). Throws IoError.
void write_snapshot_pgm(const OccupancyField& field, const std::filesystem::path& path);

}  // namespace steiner
