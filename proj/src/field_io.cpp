#include "holoshape/field_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "holoshape/errors.hpp"

namespace holoshape {

namespace {

std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

double parse_real(const std::string& tok) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size()) {
    throw FieldFormat("CF64: bad number '" + tok + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& tok) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size()) {
    throw FieldFormat("CF64: bad count '" + tok + "'");
  }
  return v;
}

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> b{};
  for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((bits >> (8 * k)) & 0xFF);
  out.write(b.data(), 8);
}

double get_le(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_cf64(const ComplexField& field, std::ostream& out) {
  const GridSpec& g = field.grid();
  out << "CF64 " << g.nx() << ' ' << g.ny() << ' ' << shortest(g.dx()) << ' ' << shortest(g.dy())
      << ' ' << shortest(field.wavelength()) << '\n';
  for (const cplx& v : field.samples()) {
    put_le(out, v.real());
    put_le(out, v.imag());
  }
  if (!out) throw FieldFormat("CF64: write failed");
}

ComplexField read_cf64(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FieldFormat("CF64: missing header");
  std::istringstream hs(header);
  std::string magic, nx, ny, dx, dy, wl, extra;
  if (!(hs >> magic >> nx >> ny >> dx >> dy >> wl) || magic != "CF64" || (hs >> extra)) {
    throw FieldFormat("CF64: malformed header");
  }
  GridSpec grid(parse_count(nx), parse_count(ny), parse_real(dx), parse_real(dy));
  std::vector<unsigned char> raw(grid.size() * 16);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw FieldFormat("CF64: truncated sample block");
  }
  std::vector<cplx> samples(grid.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    samples[k] = {get_le(raw.data() + 16 * k), get_le(raw.data() + 16 * k + 8)};
  }
  return ComplexField(grid, std::move(samples), parse_real(wl));
}

void save_cf64(const ComplexField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FieldFormat("CF64: cannot open " + path.string() + " for writing");
  write_cf64(field, out);
}

ComplexField load_cf64(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FieldFormat("CF64: cannot open " + path.string());
  return read_cf64(in);
}

}  // namespace holoshape
