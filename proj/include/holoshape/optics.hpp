#pragma once

#include <optional>
#include <variant>

#include "holoshape/field.hpp"

namespace holoshape {

struct FourierLens {
  double focal_length = 0.75;  // meters
};

struct CircularAperture {
  double radius = 0.0;
};

struct RectangularAperture {
  double half_width = 0.0;
  double half_height = 0.0;
};

// Hard-edged stop centered on the axis. Samples on the boundary pass.
struct Aperture {
  std::variant<CircularAperture, RectangularAperture> shape;

  static Aperture circular(double radius) { return {CircularAperture{radius}}; }
  static Aperture rectangular(double hw, double hh) { return {RectangularAperture{hw, hh}}; }
  bool contains(double x, double y) const;
};

// Pitch of the lens' back focal plane for a field sampled on `grid`.
GridSpec fourier_plane_grid(const GridSpec& grid, double wavelength, double focal_length);

// Exact 2f relation: a centered unitary DFT whose output pitch is
// λf/(n·d) per axis. The amplitude is rescaled so physical power
// (sum |E|² dx dy) is conserved.
ComplexField fourier_lens_transform(const ComplexField& field, const FourierLens& lens);
// Inverse of fourier_lens_transform (back focal plane -> front focal plane).
ComplexField inverse_fourier_lens_transform(const ComplexField& field, const FourierLens& lens);

struct ApertureResult {
  ComplexField field;
  double transmitted_fraction;  // 1 for a zero-power input
};
ApertureResult apply_aperture(const ComplexField& field, const Aperture& aperture);

// Two lens transforms with an optional stop in the shared Fourier plane.
// Equal focal lengths return the input inverted through the center sample
// (x -> -x, y -> -y), i.e. output(i, j) = input((n - i) mod n, ...).
ComplexField four_f_relay(const ComplexField& field, const FourierLens& first,
                          const FourierLens& second,
                          const std::optional<Aperture>& fourier_plane_aperture = std::nullopt);

// Ideal afocal telescope: pitch × magnification, amplitude / magnification.
ComplexField telescope(const ComplexField& field, double magnification);

// Angular-spectrum free-space propagation over `distance` meters.
// Evanescent components decay as exp(-|z|·κ).
ComplexField angular_spectrum_propagate(const ComplexField& field, double distance);

// Band-limited (DFT zero-padding) interpolation onto a grid `factor` times
// finer over the same physical window. Power is conserved.
ComplexField fourier_upsample(const ComplexField& field, std::size_t factor);

}  // namespace holoshape
