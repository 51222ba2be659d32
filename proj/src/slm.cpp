#include "holoshape/slm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "blur.hpp"
#include "holoshape/errors.hpp"
#include "holoshape/kernels.hpp"

namespace holoshape {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w >= kTwoPi ? 0.0 : w;
}
}  // namespace

void SlmSpec::validate() const {
  if (nx == 0 || ny == 0) throw DomainError("SLM needs at least one pixel");
  if (!(pitch > 0.0)) throw DomainError("SLM pitch must be positive");
  if (levels < 2 || levels > 256) throw DomainError("SLM levels must be in [2, 256]");
  if (!(modulation_efficiency >= 0.0 && modulation_efficiency <= 1.0)) {
    throw DomainError("modulation efficiency must lie in [0, 1]");
  }
  if (!(crosstalk_sigma >= 0.0)) throw DomainError("crosstalk sigma must be non-negative");
}

Hologram::Hologram(SlmSpec slm, std::vector<std::uint8_t> gray) : slm_(slm), gray_(std::move(gray)) {
  slm_.validate();
  if (gray_.size() != slm_.nx * slm_.ny) throw HologramFormat("hologram size does not match SLM");
}

RealField Hologram::decode() const {
  std::vector<double> phi(gray_.size());
  for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = kTwoPi * gray_[k] / slm_.levels;
  return RealField(slm_.pixel_grid(), std::move(phi));
}

Hologram Hologram::shifted(long dp, long dq) const {
  std::vector<std::uint8_t> out(gray_.size(), 0);
  const long w = static_cast<long>(slm_.nx);
  const long h = static_cast<long>(slm_.ny);
  for (long q = 0; q < h; ++q) {
    for (long p = 0; p < w; ++p) {
      const long sp = p - dp;
      const long sq = q - dq;
      if (sp < 0 || sq < 0 || sp >= w || sq >= h) continue;
      out[static_cast<std::size_t>(q * w + p)] = gray_[static_cast<std::size_t>(sq * w + sp)];
    }
  }
  return Hologram(slm_, std::move(out));
}

Hologram quantize_phase(const RealField& phase, const SlmSpec& slm) {
  slm.validate();
  const GridSpec& g = phase.grid();
  if (g.nx() != slm.nx || g.ny() != slm.ny || !g.same_pitch(slm.pixel_grid())) {
    throw GridMismatch("quantize_phase: phase map is not on the SLM pixel lattice");
  }
  std::vector<std::uint8_t> gray(g.size());
  for (std::size_t k = 0; k < gray.size(); ++k) {
    const double level = std::round(slm.levels * wrap_2pi(phase.values()[k]) / kTwoPi);
    gray[k] = static_cast<std::uint8_t>(static_cast<long>(level) % slm.levels);
  }
  return Hologram(slm, std::move(gray));
}

ComplexField apply_slm_phase(const ComplexField& field, const RealField& phase, const SlmSpec& slm) {
  slm.validate();
  const GridSpec& g = field.grid();
  if (!g.same_pitch(slm.pixel_grid())) {
    throw GridMismatch("apply_slm: field pitch differs from the SLM pixel pitch");
  }
  if (phase.grid().nx() != slm.nx || phase.grid().ny() != slm.ny) {
    throw GridMismatch("apply_slm: phase map is not on the SLM pixel lattice");
  }

  // Crosstalk acts on the phasor so a uniform phase is left untouched by the
  // blur regardless of where it wraps.
  std::vector<cplx> phasor(phase.values().size());
  for (std::size_t k = 0; k < phasor.size(); ++k) phasor[k] = std::polar(1.0, phase.values()[k]);
  if (slm.crosstalk_sigma > 0.0) {
    const double s = slm.crosstalk_sigma / slm.pitch;
    phasor = detail::gaussian_blur<cplx>(phasor, slm.nx, slm.ny, s, s);
  }

  // Per-sample transfer: m·exp(iφ_eff) + (1 - m) inside the window, 1 outside.
  const double m = slm.modulation_efficiency;
  std::vector<cplx> transfer(g.size(), cplx(1.0, 0.0));
  const long ox = static_cast<long>(g.nx() / 2) - static_cast<long>(slm.nx / 2);
  const long oy = static_cast<long>(g.ny() / 2) - static_cast<long>(slm.ny / 2);
  for (std::size_t q = 0; q < slm.ny; ++q) {
    const long j = static_cast<long>(q) + oy;
    if (j < 0 || j >= static_cast<long>(g.ny())) continue;
    for (std::size_t p = 0; p < slm.nx; ++p) {
      const long i = static_cast<long>(p) + ox;
      if (i < 0 || i >= static_cast<long>(g.nx())) continue;
      const cplx z = phasor[q * slm.nx + p];
      const cplx unit = slm.crosstalk_sigma > 0.0 ? std::polar(1.0, std::arg(z)) : z;
      transfer[g.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))] =
          m == 1.0 ? unit : m * unit + (1.0 - m);
    }
  }
  std::vector<cplx> out(g.size());
  kernels::multiply(field.samples(), transfer, out);
  return ComplexField(g, std::move(out), field.wavelength());
}

ComplexField apply_slm(const ComplexField& field, const Hologram& holo, const SlmSpec& slm) {
  if (holo.nx() != slm.nx || holo.ny() != slm.ny) {
    throw GridMismatch("apply_slm: hologram size differs from the SLM");
  }
  SlmSpec device = slm;
  device.levels = holo.slm().levels;
  return apply_slm_phase(field, holo.decode(), device);
}

GrayImage to_image(const Hologram& holo) {
  return GrayImage{holo.nx(), holo.ny(), holo.grays()};
}

void save_hologram(const Hologram& holo, const std::filesystem::path& path) {
  save_pgm(to_image(holo), path);
}

Hologram load_hologram_any_size(const std::filesystem::path& path, SlmSpec slm) {
  GrayImage img;
  try {
    img = load_pgm(path);
  } catch (const ImageLoad& e) {
    throw HologramFormat(e.what());
  }
  slm.nx = img.width;
  slm.ny = img.height;
  return Hologram(slm, std::move(img.pixels));
}

Hologram load_hologram(const std::filesystem::path& path, SlmSpec slm) {
  Hologram h = load_hologram_any_size(path, slm);
  if (h.nx() != slm.nx || h.ny() != slm.ny) {
    std::ostringstream os;
    os << "hologram is " << h.nx() << "x" << h.ny() << ", SLM expects " << slm.nx << "x" << slm.ny;
    throw HologramFormat(os.str());
  }
  return h;
}

}  // namespace holoshape
