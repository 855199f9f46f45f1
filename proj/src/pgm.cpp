#include "steiner/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "steiner/errors.hpp"

namespace steiner {
namespace {

// Header tokenizer that collects `#extent` comments on the way.
class HeaderReader {
 public:
  HeaderReader(const std::string& data, std::optional<double>& extent) : data_(data), extent_(extent) {}

  std::string token() {
    skip_space_and_comments();
    std::size_t start = pos_;
    while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_])) && data_[pos_] != '#') {
      ++pos_;
    }
    if (start == pos_) throw BadMaskFile("truncated PGM header");
    return data_.substr(start, pos_ - start);
  }

  int integer() {
    const std::string t = token();
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used != t.size()) throw BadMaskFile("bad integer in PGM header: " + t);
      return v;
    } catch (const std::logic_error&) {
      throw BadMaskFile("bad integer in PGM header: " + t);
    }
  }

  // Exactly one whitespace byte separates the header from P5 raster data.
  std::size_t raster_offset() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      throw BadMaskFile("missing separator before PGM raster");
    }
    return pos_ + 1;
  }

  std::size_t position() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        const std::size_t end = data_.find('\n', pos_);
        const std::string line = data_.substr(pos_ + 1, end == std::string::npos ? std::string::npos : end - pos_ - 1);
        parse_comment(line);
        pos_ = end == std::string::npos ? data_.size() : end + 1;
      } else {
        return;
      }
    }
  }

  void parse_comment(const std::string& line) {
    std::istringstream in(line);
    std::string key;
    double value = 0.0;
    if (in >> key && key == "extent") {
      if (!(in >> value) || !(value > 0.0) || !std::isfinite(value)) {
        throw BadMaskFile("invalid #extent comment in PGM header");
      }
      extent_ = value;
    }
  }

  const std::string& data_;
  std::optional<double>& extent_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadMaskFile("cannot open mask file " + path.string());
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  GrayImage img;
  HeaderReader header(data, img.extent);
  const std::string magic = header.token();
  if (magic != "P2" && magic != "P5") throw BadMaskFile("not a PGM file (magic " + magic + ")");
  img.width = header.integer();
  img.height = header.integer();
  img.max_value = header.integer();
  if (img.width <= 0 || img.height <= 0) throw BadMaskFile("PGM dimensions must be positive");
  if (img.max_value <= 0 || img.max_value > 65535) throw BadMaskFile("PGM maxval out of range");

  const std::size_t count = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.pixels.resize(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = header.integer();
      if (v < 0 || v > img.max_value) throw BadMaskFile("PGM sample exceeds maxval");
      img.pixels[i] = static_cast<std::uint16_t>(v);
    }
  } else {
    const std::size_t offset = header.raster_offset();
    const std::size_t bytes = img.max_value < 256 ? 1 : 2;
    if (data.size() < offset + count * bytes) throw BadMaskFile("truncated PGM raster");
    for (std::size_t i = 0; i < count; ++i) {
      const auto* p = reinterpret_cast<const unsigned char*>(data.data() + offset + i * bytes);
      const int v = bytes == 1 ? p[0] : (p[0] << 8) | p[1];
      if (v > img.max_value) throw BadMaskFile("PGM sample exceeds maxval");
      img.pixels[i] = static_cast<std::uint16_t>(v);
    }
  }
  return img;
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P5\n";
  if (image.extent) {
    std::ostringstream ext;
    ext.precision(17);
    ext << *image.extent;
    out << "#extent " << ext.str() << "\n";
  }
  out << image.width << " " << image.height << "\n" << image.max_value << "\n";
  for (std::uint16_t v : image.pixels) {
    if (image.max_value < 256) {
      out.put(static_cast<char>(v));
    } else {
      out.put(static_cast<char>(v >> 8));
      out.put(static_cast<char>(v & 0xff));
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

GrayImage field_image(const OccupancyField& field) {
  const GridSpec& g = field.grid();
  const int n = g.resolution();
  const int slice = g.dim() == 3 ? n / 2 : 0;

  GrayImage img;
  img.width = n;
  img.height = n;
  img.max_value = 255;
  img.extent = g.extent();
  img.pixels.resize(static_cast<std::size_t>(n) * n);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const double v = field.at(col, n - 1 - row, slice);
      img.pixels[static_cast<std::size_t>(row) * n + col] = static_cast<std::uint16_t>(std::lround(v * 255.0));
    }
  }
  return img;
}

}  // namespace steiner
