#pragma once

#include <filesystem>
#include <iosfwd>

#include "holoshape/field.hpp"

namespace holoshape {

// CF64 container: an ASCII header line
//   "CF64 <nx> <ny> <dx_m> <dy_m> <wavelength_m>\n"
// followed by nx·ny (re, im) pairs of little-endian IEEE-754 doubles,
// row-major. Header reals use shortest round-trip formatting, so a
// write/read cycle is bit-exact.
void write_cf64(const ComplexField& field, std::ostream& out);
ComplexField read_cf64(std::istream& in);

void save_cf64(const ComplexField& field, const std::filesystem::path& path);
ComplexField load_cf64(const std::filesystem::path& path);

}  // namespace holoshape
