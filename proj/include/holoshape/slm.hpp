#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "holoshape/field.hpp"
#include "holoshape/pgm.hpp"

namespace holoshape {

// Phase-only SLM. Defaults describe a 792×600, 20 µm, 8-bit device.
struct SlmSpec {
  std::size_t nx = 792;
  std::size_t ny = 600;
  double pitch = 20e-6;                // meters
  int levels = 256;                    // gray levels spanning [0, 2π)
  double modulation_efficiency = 0.95; // fraction of light taking the programmed phase
  double crosstalk_sigma = 0.0;        // meters, Gaussian blur of the realized phasor

  void validate() const;
  // Pixel lattice as a grid (pixel (p, q) centered on grid sample (p, q)).
  GridSpec pixel_grid() const { return GridSpec(nx, ny, pitch, pitch); }
};

class Hologram {
 public:
  Hologram(SlmSpec slm, std::vector<std::uint8_t> gray);

  const SlmSpec& slm() const noexcept { return slm_; }
  std::size_t nx() const noexcept { return slm_.nx; }
  std::size_t ny() const noexcept { return slm_.ny; }
  std::uint8_t gray(std::size_t p, std::size_t q) const { return gray_[q * slm_.nx + p]; }
  const std::vector<std::uint8_t>& grays() const noexcept { return gray_; }

  // φ = 2π·g/levels on the pixel lattice.
  RealField decode() const;
  // Lateral shift by whole pixels; vacated pixels get gray 0.
  Hologram shifted(long dp, long dq) const;

  bool operator==(const Hologram& other) const { return gray_ == other.gray_ && nx() == other.nx(); }

 private:
  SlmSpec slm_;
  std::vector<std::uint8_t> gray_;
};

// Wraps φ into [0, 2π) and rounds onto the gray scale. The phase map must be
// sampled on the SLM pixel lattice.
Hologram quantize_phase(const RealField& phase, const SlmSpec& slm);

// Programs a phase map (continuous or decoded) onto a field. The SLM window
// is centered on the field grid, whose pitch must equal the pixel pitch;
// samples outside the window pass unmodulated. Output =
//   m·E·exp(i·φ_eff) + (1 - m)·E,  φ_eff = arg(blur(exp(iφ), crosstalk)).
ComplexField apply_slm_phase(const ComplexField& field, const RealField& phase, const SlmSpec& slm);
ComplexField apply_slm(const ComplexField& field, const Hologram& holo, const SlmSpec& slm);

// Binary PGM (P5, maxval 255), width nx, height ny. Loading throws
// HologramFormat on malformed files or a size that disagrees with `slm`.
void save_hologram(const Hologram& holo, const std::filesystem::path& path);
Hologram load_hologram(const std::filesystem::path& path, SlmSpec slm);
// Takes the dimensions from the file, the other device parameters from `slm`.
Hologram load_hologram_any_size(const std::filesystem::path& path, SlmSpec slm = {});

GrayImage to_image(const Hologram& holo);

}  // namespace holoshape
