#pragma once

#include <cstdint>
#include <string>

#include "steiner/directions.hpp"
#include "steiner/shapes.hpp"

namespace steiner {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// Shape from its CLI name and argument string:
//   ball       "r" or "r;c1,c2[,c3]"
//   box        "lo1,lo2[,lo3];hi1,hi2[,hi3]"
//   box-union  "lo;hi|lo;hi|..."
//   l-shape    "scale"
//   annulus    "r_in,r_out"
//   two-balls  "c;r|c;r"
//   mask       "<path to PGM>"
// An empty argument string selects the built-in default of the shape.
// `target_volume` <= 0 disables normalization. Throws ConfigInvalid.
ShapeSpec parse_shape(const std::string& name, const std::string& args, int dim, double target_volume);

// uniform | equidistributed | cyclic:<u1;u2;...> | axis-biased:<k>
DirectionPolicy parse_directions(const std::string& spec, int dim, std::uint64_t seed);

int cli_main(int argc, char** argv);

}  // namespace steiner
