#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "steiner/grid.hpp"

namespace steiner {

// Grayscale image, rows stored top to bottom.
struct GrayImage {
  int width = 0;
  int height = 0;
  int max_value = 255;
  std::vector<std::uint16_t> pixels;
  // Half-width of the physical square covered by the image, from `#extent R`.
  std::optional<double> extent;

  double level(int col, int row) const {
    return static_cast<double>(pixels[static_cast<std::size_t>(row) * width + col]) / max_value;
  }
};

// Reads P2 or P5. Throws BadMaskFile on malformed input.
GrayImage read_pgm(const std::filesystem::path& path);

// Writes binary P5 with an `#extent R` comment. Throws IoError.
void write_pgm(const GrayImage& image, const std::filesystem::path& path);

// Image of a 2D field (or of the middle axis-2 slice of a 3D field): occupancy
// times 255, rounded. Image row r holds cells with axis-1 index N - 1 - r.
GrayImage field_image(const OccupancyField& field);

}  // namespace steiner
