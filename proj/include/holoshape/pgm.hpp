#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "holoshape/field.hpp"

namespace holoshape {

// 8-bit grayscale raster, row-major, row 0 first.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::size_t col, std::size_t row) const { return pixels[row * width + col]; }
  bool operator==(const GrayImage&) const = default;
};

// Binary PGM (P5) with maxval 255. Reading throws ImageLoad on anything else.
void write_pgm(const GrayImage& image, std::ostream& out);
GrayImage read_pgm(std::istream& in);
void save_pgm(const GrayImage& image, const std::filesystem::path& path);
GrayImage load_pgm(const std::filesystem::path& path);

// Linear min-max mapping of a real map onto 0..255 (grid row j -> image row j).
struct LinearRender {
  GrayImage image;
  double min = 0.0;
  double max = 0.0;
};
LinearRender render_linear(const RealField& values);

}  // namespace holoshape
