#include "holoshape/optics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "holoshape/errors.hpp"
#include "holoshape/fft.hpp"

namespace holoshape {

namespace {

ComplexField lens_transform(const ComplexField& field, double focal_length, fft::Direction dir) {
  if (!(focal_length > 0.0)) throw DomainError("focal length must be positive");
  const GridSpec& g = field.grid();
  const GridSpec out_grid = fourier_plane_grid(g, field.wavelength(), focal_length);
  auto out = fft::centered(field.samples(), g.nx(), g.ny(), dir);
  const double gain = std::sqrt(g.cell_area() / out_grid.cell_area());
  for (auto& v : out) v *= gain;
  return ComplexField(out_grid, std::move(out), field.wavelength());
}

}  // namespace

bool Aperture::contains(double x, double y) const {
  if (const auto* c = std::get_if<CircularAperture>(&shape)) {
    return x * x + y * y <= c->radius * c->radius;
  }
  const auto& r = std::get<RectangularAperture>(shape);
  return std::abs(x) <= r.half_width && std::abs(y) <= r.half_height;
}

GridSpec fourier_plane_grid(const GridSpec& grid, double wavelength, double focal_length) {
  const double lf = wavelength * focal_length;
  return GridSpec(grid.nx(), grid.ny(), lf / grid.extent_x(), lf / grid.extent_y());
}

ComplexField fourier_lens_transform(const ComplexField& field, const FourierLens& lens) {
  return lens_transform(field, lens.focal_length, fft::Direction::Forward);
}

ComplexField inverse_fourier_lens_transform(const ComplexField& field, const FourierLens& lens) {
  return lens_transform(field, lens.focal_length, fft::Direction::Inverse);
}

ApertureResult apply_aperture(const ComplexField& field, const Aperture& aperture) {
  const GridSpec& g = field.grid();
  std::vector<cplx> out(field.samples().begin(), field.samples().end());
  double total = 0.0;
  double kept = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      cplx& v = out[g.index(i, j)];
      const double e = std::norm(v);
      total += e;
      if (aperture.contains(g.x(i), g.y(j))) {
        kept += e;
      } else {
        v = 0.0;
      }
    }
  }
  return {ComplexField(g, std::move(out), field.wavelength()), total > 0.0 ? kept / total : 1.0};
}

ComplexField four_f_relay(const ComplexField& field, const FourierLens& first,
                          const FourierLens& second,
                          const std::optional<Aperture>& fourier_plane_aperture) {
  ComplexField mid = fourier_lens_transform(field, first);
  if (fourier_plane_aperture) mid = apply_aperture(mid, *fourier_plane_aperture).field;
  return fourier_lens_transform(mid, second);
}

ComplexField telescope(const ComplexField& field, double magnification) {
  if (!(magnification > 0.0)) throw DomainError("telescope magnification must be positive");
  if (magnification == 1.0) return field;
  const GridSpec& g = field.grid();
  return scale(field, 1.0 / magnification)
      .with_grid(g.with_pitch(g.dx() * magnification, g.dy() * magnification));
}

ComplexField angular_spectrum_propagate(const ComplexField& field, double distance) {
  if (distance == 0.0) return field;
  const GridSpec& g = field.grid();
  const double k = 2.0 * std::numbers::pi / field.wavelength();
  std::vector<cplx> spec(field.samples().begin(), field.samples().end());
  fft::transform(spec, g.nx(), g.ny(), fft::Direction::Forward);

  double evanescent = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double ky = 2.0 * std::numbers::pi * fft::signed_bin(j, g.ny()) / g.extent_y();
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double kx = 2.0 * std::numbers::pi * fft::signed_bin(i, g.nx()) / g.extent_x();
      cplx& v = spec[g.index(i, j)];
      const double e = std::norm(v);
      total += e;
      const double kz2 = k * k - kx * kx - ky * ky;
      if (kz2 >= 0.0) {
        v *= std::polar(1.0, distance * std::sqrt(kz2));
      } else {
        evanescent += e;
        v *= std::exp(-std::abs(distance) * std::sqrt(-kz2));
      }
    }
  }
  if (total > 0.0 && evanescent > 1e-6 * total) {
    std::ostringstream os;
    os << "angular_spectrum_propagate: " << evanescent / total
       << " of the spectral power is evanescent; grid pitch is below the wavelength scale";
    warn(os.str());
  }

  fft::transform(spec, g.nx(), g.ny(), fft::Direction::Inverse);
  const double inv_n = 1.0 / static_cast<double>(g.size());
  for (auto& v : spec) v *= inv_n;
  return ComplexField(g, std::move(spec), field.wavelength());
}

ComplexField fourier_upsample(const ComplexField& field, std::size_t factor) {
  if (factor == 0) throw DomainError("upsample factor must be positive");
  if (factor == 1) return field;
  const GridSpec& g = field.grid();
  const std::size_t nx = g.nx() * factor;
  const std::size_t ny = g.ny() * factor;
  const GridSpec fine(nx, ny, g.dx() / static_cast<double>(factor),
                      g.dy() / static_cast<double>(factor));
  const auto spec = fft::centered(field.samples(), g.nx(), g.ny(), fft::Direction::Forward);
  std::vector<cplx> padded(nx * ny);
  const std::size_t ox = nx / 2 - g.nx() / 2;
  const std::size_t oy = ny / 2 - g.ny() / 2;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) padded[(j + oy) * nx + i + ox] = spec[g.index(i, j)];
  }
  auto out = fft::centered(padded, nx, ny, fft::Direction::Inverse);
  // Unitary transforms keep sum |.|²; the cell area shrank by factor².
  const double gain = static_cast<double>(factor);
  for (auto& v : out) v *= gain;
  return ComplexField(fine, std::move(out), field.wavelength());
}

}  // namespace holoshape
