#include "holoshape/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "holoshape/errors.hpp"

namespace holoshape {

namespace {

// Next whitespace-delimited header token, skipping '#' comments. Consumes
// the single whitespace byte that terminates the token.
std::string header_token(std::istream& in) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  std::string tok;
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (tok.empty()) throw ImageLoad("PGM: truncated header");
  return tok;
}

std::size_t header_number(std::istream& in) {
  const std::string tok = header_token(in);
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &pos);
  } catch (const std::exception&) {
    throw ImageLoad("PGM: bad header number '" + tok + "'");
  }
  if (pos != tok.size()) throw ImageLoad("PGM: bad header number '" + tok + "'");
  return v;
}

}  // namespace

void write_pgm(const GrayImage& image, std::ostream& out) {
  if (image.pixels.size() != image.width * image.height) {
    throw DomainError("PGM: pixel count does not match dimensions");
  }
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

GrayImage read_pgm(std::istream& in) {
  if (header_token(in) != "P5") throw ImageLoad("PGM: expected P5 magic");
  GrayImage img;
  img.width = header_number(in);
  img.height = header_number(in);
  const std::size_t maxval = header_number(in);
  if (maxval != 255) throw ImageLoad("PGM: maxval must be 255, got " + std::to_string(maxval));
  if (img.width == 0 || img.height == 0) throw ImageLoad("PGM: empty image");
  // header_token consumed exactly one whitespace byte after maxval.
  img.pixels.resize(img.width * img.height);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != img.pixels.size()) {
    throw ImageLoad("PGM: truncated raster");
  }
  return img;
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageLoad("PGM: cannot open " + path.string() + " for writing");
  write_pgm(image, out);
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageLoad("PGM: cannot open " + path.string());
  return read_pgm(in);
}

LinearRender render_linear(const RealField& values) {
  const auto v = values.values();
  LinearRender r;
  r.min = *std::min_element(v.begin(), v.end());
  r.max = *std::max_element(v.begin(), v.end());
  r.image.width = values.grid().nx();
  r.image.height = values.grid().ny();
  r.image.pixels.resize(v.size());
  const double span = r.max - r.min;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double t = span > 0.0 ? (v[k] - r.min) / span : 0.0;
    r.image.pixels[k] = static_cast<std::uint8_t>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
  }
  return r;
}

}  // namespace holoshape
