#include "holoshape/shaper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "holoshape/errors.hpp"
#include "holoshape/kernels.hpp"
#include "holoshape/metrics.hpp"

namespace holoshape {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> unit_amplitude(std::span<const double> amp, double cell_area, const char* what) {
  double p = 0.0;
  for (double a : amp) {
    if (a < 0.0) throw DomainError(std::string(what) + " must be non-negative");
    p += a * a;
  }
  p *= cell_area;
  if (!(p > 0.0)) throw ZeroField(std::string(what) + " has zero power");
  const double s = 1.0 / std::sqrt(p);
  std::vector<double> out(amp.begin(), amp.end());
  for (double& a : out) a *= s;
  return out;
}

struct AxisSpread {
  double sx2;
  double sy2;
};

// Intensity-weighted variance of x and y for amplitude `a` on `g`.
AxisSpread spread(std::span<const double> a, const GridSpec& g) {
  double p = 0.0, mx = 0.0, my = 0.0, mxx = 0.0, myy = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double y = g.y(j);
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double x = g.x(i);
      const double w = a[g.index(i, j)] * a[g.index(i, j)];
      p += w;
      mx += w * x;
      my += w * y;
      mxx += w * x * x;
      myy += w * y * y;
    }
  }
  if (!(p > 0.0)) throw ZeroField("amplitude has zero power");
  mx /= p;
  my /= p;
  return {std::max(mxx / p - mx * mx, 0.0), std::max(myy / p - my * my, 0.0)};
}

std::vector<double> initial_phase(const GridSpec& g, const InitialPhase& init, double matched) {
  std::vector<double> phi(g.size(), 0.0);
  switch (init.kind) {
    case InitialPhase::Kind::Zeros:
      break;
    case InitialPhase::Kind::SeededRandom: {
      std::mt19937_64 rng(init.seed);
      for (double& v : phi) v = kTwoPi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      break;
    }
    case InitialPhase::Kind::Quadratic:
    case InitialPhase::Kind::Matched: {
      const double c = init.kind == InitialPhase::Kind::Matched ? matched : init.curvature;
      for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
          const double x = g.x(i);
          const double y = g.y(j);
          phi[g.index(i, j)] = c * (x * x + y * y);
        }
      }
      break;
    }
  }
  return phi;
}

double wrap_2pi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w >= kTwoPi ? 0.0 : w;
}

ComplexField through_slm1(const ComplexField& input, const RealField& phase1,
                          const ShaperConfig& config, const PlaneGrids& grids) {
  const ComplexField at1 = apply_slm_phase(input, phase1, lattice_slm(config.slm1, grids.slm1));
  ComplexField at2 = fourier_lens_transform(at1, config.lens);
  if (config.plane2_aperture) at2 = apply_aperture(at2, *config.plane2_aperture).field;
  return at2;
}

ComplexField through_slm2(const ComplexField& at2, const RealField& phase2,
                          const ShaperConfig& config, const PlaneGrids& grids) {
  const ComplexField shaped = apply_slm_phase(at2, phase2, lattice_slm(config.slm2, grids.slm2));
  ComplexField out = fourier_lens_transform(shaped, config.lens);
  if (config.target_aperture) out = apply_aperture(out, *config.target_aperture).field;
  return out;
}

RealField relabel(const RealField& f, const GridSpec& g) {
  return RealField(g, std::vector<double>(f.values().begin(), f.values().end()));
}

}  // namespace

double matched_curvature(const RealField& input_amplitude, const RealField& target_amplitude,
                         const FourierLens& lens, double wavelength) {
  const GridSpec& g1 = input_amplitude.grid();
  // A real amplitude times exp(i c r²) maps x to u = λf·c·x/π, so the
  // plane-2 variances add: σu² = σu0² + (λf·c/π)² σx².
  const ComplexField flat = ComplexField(
      g1, std::vector<cplx>(input_amplitude.values().begin(), input_amplitude.values().end()),
      wavelength);
  const ComplexField f0 = fourier_lens_transform(flat, lens);
  require_same_grid(f0.grid(), target_amplitude.grid(), "matched_curvature");
  const AxisSpread s1 = spread(input_amplitude.values(), g1);
  const AxisSpread s0 = spread(amplitude(f0).values(), f0.grid());
  const AxisSpread st = spread(target_amplitude.values(), target_amplitude.grid());
  const double scale = std::numbers::pi / (wavelength * lens.focal_length);
  const auto axis = [&](double t2, double u2, double x2) {
    return x2 > 0.0 ? scale * std::sqrt(std::max(t2 - u2, 0.0) / x2) : 0.0;
  };
  return std::min(axis(st.sx2, s0.sx2, s1.sx2), axis(st.sy2, s0.sy2, s1.sy2));
}

GsResult gs_phase_retrieval(const ComplexField& input, const RealField& target_amplitude,
                            const FourierLens& lens, int iterations, const InitialPhase& init) {
  if (iterations < 1) throw DomainError("GS needs at least one iteration");
  const GridSpec& g1 = input.grid();
  const GridSpec g2 = fourier_plane_grid(g1, input.wavelength(), lens.focal_length);
  require_same_grid(g2, target_amplitude.grid(), "gs_phase_retrieval (plane 2)");

  const RealField in_amp = amplitude(input);
  const auto a1 = unit_amplitude(in_amp.values(), g1.cell_area(), "input amplitude");
  const auto a2 = unit_amplitude(target_amplitude.values(), g2.cell_area(), "target amplitude");

  const double matched = init.kind == InitialPhase::Kind::Matched
                             ? matched_curvature(in_amp, target_amplitude, lens, input.wavelength())
                             : 0.0;
  const auto phi0 = initial_phase(g1, init, matched);
  std::vector<cplx> x(g1.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::polar(a1[k], phi0[k]);

  std::vector<cplx> buf(g1.size());
  ComplexField plane2 = fourier_lens_transform(ComplexField(g1, x, input.wavelength()), lens);
  ComplexField back = ComplexField::zeros(g1, input.wavelength());
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(iterations));
  for (int it = 0; it < iterations; ++it) {
    kernels::impose_amplitude(plane2.samples(), a2, buf);
    back = inverse_fourier_lens_transform(ComplexField(g2, buf, input.wavelength()), lens);
    kernels::impose_amplitude(back.samples(), a1, x);
    plane2 = fourier_lens_transform(ComplexField(g1, x, input.wavelength()), lens);

    const double p = kernels::norm_sq(plane2.samples()) * g2.cell_area();
    const double s = p > 0.0 ? 1.0 / std::sqrt(p) : 0.0;
    trace.push_back(std::sqrt(kernels::amplitude_mismatch_sq(plane2.samples(), a2, s) * g2.cell_area()));
  }
  // The back-propagated field carries the phase everywhere, including where
  // the input amplitude vanishes.
  return {phase(back), std::move(trace)};
}

RealField correction_hologram(const ComplexField& achieved, const ComplexField& target,
                              const FourierLens& lens) {
  const ComplexField desired = inverse_fourier_lens_transform(target, lens);
  require_same_grid(achieved.grid(), desired.grid(), "correction_hologram");
  double peak = 0.0;
  for (const cplx& v : achieved.samples()) peak = std::max(peak, std::abs(v));
  const double floor = 1e-4 * peak;
  std::vector<double> phi(achieved.grid().size(), 0.0);
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const cplx a = achieved.samples()[k];
    if (std::abs(a) < floor || peak == 0.0) continue;
    phi[k] = wrap_2pi(std::arg(desired.samples()[k]) - std::arg(a));
  }
  return RealField(achieved.grid(), std::move(phi));
}

void ShaperConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(lens.focal_length > 0.0)) throw ConfigError("focal length must be positive");
  if (grid_size < 8) throw ConfigError("grid size must be at least 8");
  if (grid_pitch < 0.0) throw ConfigError("grid pitch must be non-negative");
  validate_mode(input);
  validate_mode(target);
  slm1.validate();
  slm2.validate();
}

void ShaperConfig::validate_mode(const ModeSpec& spec) {
  try {
    holoshape::validate(spec);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ShaperConfig ShaperConfig::ideal(const ModeSpec& target) {
  ShaperConfig c;
  c.target = target;
  for (SlmSpec* s : {&c.slm1, &c.slm2}) {
    s->modulation_efficiency = 1.0;
    s->crosstalk_sigma = 0.0;
    s->levels = 256;
  }
  return c;
}

ShaperConfig ShaperConfig::realistic(const ModeSpec& target) {
  ShaperConfig c;
  c.target = target;
  for (SlmSpec* s : {&c.slm1, &c.slm2}) {
    s->modulation_efficiency = 0.95;
    s->crosstalk_sigma = 0.5 * s->pitch;
    s->levels = 256;
  }
  c.plane2_aperture = realistic_stop(c);
  return c;
}

Aperture realistic_stop(const ShaperConfig& config) {
  const double w2 = config.input.wavelength * config.lens.focal_length /
                    (std::numbers::pi * config.target.waist);
  return Aperture::circular(2.0 * w2);
}

PlaneGrids plane_grids(const ShaperConfig& config) {
  const double n = static_cast<double>(config.grid_size);
  const double pitch = config.grid_pitch > 0.0
                           ? config.grid_pitch
                           : 8.0 * std::max(config.input.waist, config.target.waist) / n;
  const GridSpec g1 = GridSpec::square(config.grid_size, pitch);
  const double wl = config.input.wavelength;
  const GridSpec g2 = fourier_plane_grid(g1, wl, config.lens.focal_length);
  const GridSpec gt = fourier_plane_grid(g2, wl, config.lens.focal_length);
  return {g1, g2, gt};
}

SlmSpec lattice_slm(const SlmSpec& device, const GridSpec& plane) {
  SlmSpec s = device;
  s.nx = plane.nx();
  s.ny = plane.ny();
  s.pitch = plane.dx();
  s.crosstalk_sigma = device.crosstalk_sigma / device.pitch * plane.dx();
  return s;
}

ComplexField simulate_phases(const RealField& phase1, const RealField& phase2,
                             const ShaperConfig& config, const ComplexField& input_field) {
  const PlaneGrids grids = plane_grids(config);
  require_same_grid(input_field.grid(), grids.slm1, "simulate (input field)");
  const ComplexField at2 = through_slm1(input_field, relabel(phase1, grids.slm1), config, grids);
  return through_slm2(at2, relabel(phase2, grids.slm2), config, grids);
}

ComplexField simulate(const Hologram& hologram1, const Hologram& hologram2,
                      const ShaperConfig& config, const ComplexField& input_field) {
  const PlaneGrids grids = plane_grids(config);
  if (hologram1.nx() != grids.slm1.nx() || hologram1.ny() != grids.slm1.ny() ||
      hologram2.nx() != grids.slm2.nx() || hologram2.ny() != grids.slm2.ny()) {
    throw GridMismatch("simulate: hologram size differs from the computation grid");
  }
  return simulate_phases(hologram1.decode(), hologram2.decode(), config, input_field);
}

SynthesisReport synthesize(const ShaperConfig& config) {
  config.validate();
  const PlaneGrids grids = plane_grids(config);
  ModeSpec in_spec = config.input;
  ModeSpec tgt_spec = config.target;
  tgt_spec.wavelength = in_spec.wavelength;

  const ComplexField input = generate_mode(in_spec, grids.slm1);
  const ComplexField target = normalize(generate_mode(tgt_spec, grids.target));
  const ComplexField desired2 = inverse_fourier_lens_transform(target, config.lens);

  GsResult gs = gs_phase_retrieval(input, amplitude(desired2), config.lens, config.iterations,
                                   config.initial_phase);

  const SlmSpec dev1 = lattice_slm(config.slm1, grids.slm1);
  const SlmSpec dev2 = lattice_slm(config.slm2, grids.slm2);
  Hologram holo1 = quantize_phase(gs.phase, dev1);
  const RealField phase1 = config.quantize ? holo1.decode() : gs.phase;

  const ComplexField at2 = through_slm1(input, relabel(phase1, grids.slm1), config, grids);
  const RealField correction = correction_hologram(at2, target, config.lens);
  Hologram holo2 = quantize_phase(correction, dev2);
  const RealField phase2 = config.quantize ? holo2.decode() : correction;
  ComplexField out = through_slm2(at2, relabel(phase2, grids.slm2), config, grids);

  const PurityReport pr = purity(out, target);
  const double p_in = power(input);
  const double p_out = power(out);
  SynthesisReport r{std::move(holo1), std::move(holo2), input, target, std::move(out),
                    std::move(gs.error_trace)};
  r.purity = pr.purity;
  r.visibility = pr.visibility;
  r.input_power = p_in;
  r.output_power = p_out;
  // η = |<ĉ, out>|² / P_in = purity · P_out / P_in (target is unit power).
  r.conversion_efficiency = std::norm(inner_product(target, r.predicted_output)) / p_in;
  return r;
}

}  // namespace holoshape
