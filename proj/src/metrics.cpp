#include "holoshape/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "holoshape/errors.hpp"
#include "holoshape/fft.hpp"

namespace holoshape {

PurityReport purity(const ComplexField& generated, const ComplexField& reference) {
  require_same_grid(generated.grid(), reference.grid(), "purity");
  const double pb = power(generated);
  const double pc = power(reference);
  if (!(pb > 0.0) || !(pc > 0.0)) throw ZeroField("purity needs two non-zero fields");
  const cplx overlap = inner_product(reference, generated);
  const double mag = std::abs(overlap);
  PurityReport r;
  r.purity = std::min(1.0, mag * mag / (pb * pc));
  r.visibility = std::min(1.0, 2.0 * mag / (pb + pc));
  r.overlap_phase = std::arg(overlap);
  return r;
}

double conversion_efficiency(const ComplexField& input, const ComplexField& output,
                             const ModeSpec& target) {
  const double pin = power(input);
  if (!(pin > 0.0)) throw ZeroField("conversion efficiency needs a non-zero input");
  ModeSpec t = target;
  t.wavelength = output.wavelength();
  const ComplexField c = normalize(generate_mode(t, output.grid()));
  return std::norm(inner_product(c, output)) / pin;
}

double default_tilt(const GridSpec& grid) { return 0.25 * (0.5 / grid.dx()); }

RealField interferogram(const ComplexField& generated, const InterferogramOptions& options) {
  const GridSpec& g = generated.grid();
  const double tilt = options.tilt > 0.0 ? options.tilt : default_tilt(g);
  if (tilt * g.dx() > 0.25) {
    std::ostringstream os;
    os << "interferogram: carrier " << tilt << " /m gives " << 1.0 / (tilt * g.dx())
       << " samples per fringe (need >= 4)";
    throw Undersampled(os.str());
  }
  if (!(options.relative_power >= 0.0)) throw DomainError("reference power must be non-negative");
  if (!(options.reference_waist > 0.0)) throw DomainError("reference waist must be positive");
  // The reference is meant to overfill the window, so it is sampled directly
  // rather than through generate_mode and its extent check.
  const double w = options.reference_waist;
  const double ref_amp = std::sqrt(options.relative_power) * std::sqrt(2.0 / std::numbers::pi) / w;
  std::vector<double> out(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      const double r2 = g.x(i) * g.x(i) + g.y(j) * g.y(j);
      const cplx r = ref_amp * std::exp(-r2 / (w * w)) *
                     std::polar(1.0, 2.0 * std::numbers::pi * tilt * g.x(i));
      out[k] = std::norm(generated.samples()[k] + r);
    }
  }
  return RealField(g, std::move(out));
}

Demodulation demodulate_interferogram(const RealField& fringes, double carrier,
                                      double mask_threshold) {
  const GridSpec& g = fringes.grid();
  if (!(carrier > 0.0)) throw DomainError("carrier frequency must be positive");
  std::vector<cplx> data(fringes.values().begin(), fringes.values().end());
  auto spec = fft::centered(data, g.nx(), g.ny(), fft::Direction::Forward);

  // Frequency pitch of the centered spectrum, cycles per meter.
  const double dfx = 1.0 / g.extent_x();
  const double dfy = 1.0 / g.extent_y();
  if (carrier / dfx < 2.0) warn("demodulate_interferogram: carrier is within two frequency bins of DC");
  // b·g·exp(-i2π t x) (the term carrying arg b) sits at fx = -carrier.
  const long shift = std::lround(carrier / dfx);
  const double radius = 0.5 * carrier;
  const long cx = static_cast<long>(g.nx() / 2);
  const long cy = static_cast<long>(g.ny() / 2);

  double total = 0.0;
  double side = 0.0;
  std::vector<cplx> base(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double fy = (static_cast<double>(j) - cy) * dfy;
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const cplx v = spec[g.index(i, j)];
      total += std::norm(v);
      const double fx = (static_cast<double>(i) - cx) * dfx;
      const double dx = fx + shift * dfx;
      if (dx * dx + fy * fy > radius * radius) continue;
      side += std::norm(v);
      const long ti = static_cast<long>(i) + shift;
      if (ti < 0 || ti >= static_cast<long>(g.nx())) continue;
      base[g.index(static_cast<std::size_t>(ti), j)] = v;
    }
  }
  if (!(total > 0.0) || side < 0.01 * total) {
    std::ostringstream os;
    os << "demodulate_interferogram: sideband holds " << (total > 0.0 ? side / total : 0.0)
       << " of the spectral power";
    throw NoCarrier(os.str());
  }

  auto field = fft::centered(base, g.nx(), g.ny(), fft::Direction::Inverse);
  double peak = 0.0;
  for (const cplx& v : field) peak = std::max(peak, std::abs(v));
  std::vector<double> ph(g.size());
  std::vector<double> mask(g.size());
  for (std::size_t k = 0; k < field.size(); ++k) {
    ph[k] = std::arg(field[k]);
    mask[k] = std::abs(field[k]) > mask_threshold * peak ? 1.0 : 0.0;
  }
  return {RealField(g, std::move(ph)), RealField(g, std::move(mask)),
          ComplexField(g, std::move(field))};
}

double intensity_purity(const RealField& intensity, const RealField& recovered_phase,
                        const ModeSpec& target, double wavelength) {
  for (double v : intensity.values()) {
    if (v < 0.0) throw DomainError("intensity must be non-negative");
  }
  std::vector<double> amp(intensity.values().begin(), intensity.values().end());
  for (double& v : amp) v = std::sqrt(v);
  const ComplexField b = polar(RealField(intensity.grid(), std::move(amp)), recovered_phase, wavelength);
  ModeSpec t = target;
  t.wavelength = wavelength;
  return purity(b, generate_mode(t, intensity.grid())).purity;
}

double phase_winding(const ComplexField& field, double radius, std::size_t samples) {
  const GridSpec& g = field.grid();
  auto sample = [&](double x, double y) {
    const double fi = x / g.dx() + static_cast<double>(g.nx() / 2);
    const double fj = y / g.dy() + static_cast<double>(g.ny() / 2);
    const double i0 = std::floor(fi);
    const double j0 = std::floor(fj);
    const double a = fi - i0;
    const double b = fj - j0;
    auto at = [&](double i, double j) -> cplx {
      if (i < 0 || j < 0 || i >= static_cast<double>(g.nx()) || j >= static_cast<double>(g.ny())) {
        return 0.0;
      }
      return field.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    };
    return (1 - a) * (1 - b) * at(i0, j0) + a * (1 - b) * at(i0 + 1, j0) +
           (1 - a) * b * at(i0, j0 + 1) + a * b * at(i0 + 1, j0 + 1);
  };
  double total = 0.0;
  cplx prev = sample(radius, 0.0);
  for (std::size_t k = 1; k <= samples; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    const cplx cur = sample(radius * std::cos(t), radius * std::sin(t));
    total += std::arg(cur * std::conj(prev));
    prev = cur;
  }
  return total;
}

}  // namespace holoshape
