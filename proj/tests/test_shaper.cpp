#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "holoshape/errors.hpp"
#include "holoshape/metrics.hpp"
#include "holoshape/modes.hpp"
#include "holoshape/optics.hpp"
#include "holoshape/shaper.hpp"

using namespace holoshape;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kW0 = 5e-3;

bool non_increasing(const std::vector<double>& t) {
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (t[k] > t[k - 1] + 1e-12) return false;
  }
  return true;
}

ShaperConfig small_ideal(const ModeSpec& target, std::size_t n = 64, int iterations = 30) {
  ShaperConfig c = ShaperConfig::ideal(target);
  c.grid_size = n;
  c.iterations = iterations;
  return c;
}

struct GsSetup {
  ComplexField input;
  RealField target_amp;
};

GsSetup gs_setup(const ModeSpec& target, std::size_t n) {
  ShaperConfig c = small_ideal(target, n);
  const PlaneGrids g = plane_grids(c);
  const ComplexField in = generate_mode(c.input, g.slm1);
  const ComplexField t = generate_mode(c.target, g.target);
  return {in, amplitude(inverse_fourier_lens_transform(t, c.lens))};
}

}  // namespace

TEST_CASE("plane grids follow the lens pitch mapping") {
  const ShaperConfig c;
  const PlaneGrids g = plane_grids(c);
  CHECK(g.slm1.nx() == 512);
  CHECK(g.slm1.dx() == doctest::Approx(8.0 * kW0 / 512));
  CHECK(g.slm2.dx() == doctest::Approx(1080e-9 * 0.75 / (512 * g.slm1.dx())));
  CHECK(g.target.dx() == doctest::Approx(g.slm1.dx()));

  ShaperConfig fixed = c;
  fixed.grid_pitch = 1e-4;
  CHECK(plane_grids(fixed).slm1.dx() == 1e-4);

  const SlmSpec dev = ShaperConfig::realistic(ModeSpec::hg(1, 0)).slm2;
  const SlmSpec lat = lattice_slm(dev, g.slm2);
  CHECK(lat.nx == 512);
  CHECK(lat.pitch == g.slm2.dx());
  CHECK(lat.crosstalk_sigma == doctest::Approx(0.5 * g.slm2.dx()));
}

TEST_CASE("default configuration") {
  const ShaperConfig c;
  CHECK(c.iterations == 100);
  CHECK(c.initial_phase.kind == InitialPhase::Kind::Matched);
  CHECK(c.initial_phase.seed == 42);
  CHECK(c.lens.focal_length == 0.75);
  CHECK(c.input.waist == kW0);
  CHECK(c.target.waist == kDefaultTargetWaist);
  CHECK_NOTHROW(c.validate());

  ShaperConfig bad = c;
  bad.iterations = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.lens.focal_length = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.target.waist = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.slm1.levels = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  const ShaperConfig r = ShaperConfig::realistic(ModeSpec::hg(3, 0, kDefaultTargetWaist));
  CHECK(r.slm1.modulation_efficiency == 0.95);
  CHECK(r.slm2.crosstalk_sigma == doctest::Approx(0.5 * r.slm2.pitch));
  REQUIRE(r.plane2_aperture.has_value());
  const double w2 = 1080e-9 * 0.75 / (std::numbers::pi * kDefaultTargetWaist);
  CHECK(std::get<CircularAperture>(r.plane2_aperture->shape).radius == doctest::Approx(2.0 * w2));
}

TEST_CASE("matched curvature spreads a Gaussian to the target width") {
  // exp(-x²/w² + i c x²) has Fourier waist wf·sqrt(1 + (c w²)²), so a target
  // s times wider needs c = sqrt(s² - 1)/w².
  const std::size_t n = 256;
  const GridSpec g1 = GridSpec::square(n, 8 * kW0 / n);
  const FourierLens lens{0.75};
  const ComplexField in = generate_mode(ModeSpec::hg(0, 0, kW0), g1);
  const GridSpec g2 = fourier_plane_grid(g1, in.wavelength(), lens.focal_length);
  const double wf = in.wavelength() * lens.focal_length / (std::numbers::pi * kW0);
  for (double s : {1.0, 3.0, 8.0}) {
    const RealField t = amplitude(generate_mode(ModeSpec::hg(0, 0, s * wf), g2));
    const double c = matched_curvature(amplitude(in), t, lens, in.wavelength());
    CHECK(c == doctest::Approx(std::sqrt(s * s - 1.0) / (kW0 * kW0)).epsilon(1e-3).scale(1.0));
  }
  // A narrower target needs no spreading.
  const RealField narrow = amplitude(generate_mode(ModeSpec::hg(0, 0, 0.5 * wf), g2));
  CHECK(matched_curvature(amplitude(in), narrow, lens, in.wavelength()) == 0.0);
}

TEST_CASE("GS solves the identity problem immediately") {
  const std::size_t n = 64;
  const GridSpec g1 = GridSpec::square(n, 8 * kW0 / n);
  const ComplexField in = generate_mode(ModeSpec::hg(0, 0, kW0), g1);
  const RealField target = amplitude(fourier_lens_transform(in, FourierLens{0.75}));
  const GsResult r = gs_phase_retrieval(in, target, FourierLens{0.75}, 5, InitialPhase::zeros());
  REQUIRE(r.error_trace.size() == 5);
  CHECK(r.error_trace[0] < 1e-10);
}

TEST_CASE("GS error trace never increases") {
  const GsSetup s = gs_setup(ModeSpec::hg(2, 1, kDefaultTargetWaist), 64);
  for (const InitialPhase& init : {InitialPhase::zeros(), InitialPhase::random(1), InitialPhase::random(42),
                                   InitialPhase::quadratic(1e5), InitialPhase::matched()}) {
    const GsResult r = gs_phase_retrieval(s.input, s.target_amp, FourierLens{0.75}, 40, init);
    CHECK(r.error_trace.size() == 40);
    CHECK(non_increasing(r.error_trace));
    CHECK(r.error_trace.back() >= 0.0);
    CHECK(r.error_trace.back() <= 2.0);
    for (double v : r.phase.values()) {
      CHECK(v > -std::numbers::pi - 1e-12);
      CHECK(v <= std::numbers::pi + 1e-12);
    }
  }
}

TEST_CASE("GS is reproducible for a fixed seed and varies with it") {
  const GsSetup s = gs_setup(ModeSpec::hg(1, 0, kDefaultTargetWaist), 64);
  const GsResult a = gs_phase_retrieval(s.input, s.target_amp, FourierLens{0.75}, 10, InitialPhase::random(7));
  const GsResult b = gs_phase_retrieval(s.input, s.target_amp, FourierLens{0.75}, 10, InitialPhase::random(7));
  const GsResult c = gs_phase_retrieval(s.input, s.target_amp, FourierLens{0.75}, 10, InitialPhase::random(8));
  CHECK(a.error_trace == b.error_trace);
  CHECK(std::equal(a.phase.values().begin(), a.phase.values().end(), b.phase.values().begin()));
  CHECK(a.error_trace != c.error_trace);
}

TEST_CASE("GS input validation") {
  const GsSetup s = gs_setup(ModeSpec::hg(1, 0, kDefaultTargetWaist), 64);
  CHECK_THROWS_AS(gs_phase_retrieval(s.input, s.target_amp, FourierLens{0.75}, 0, InitialPhase::zeros()),
                  DomainError);
  CHECK_THROWS_AS(gs_phase_retrieval(s.input, s.target_amp, FourierLens{0.5}, 3, InitialPhase::zeros()),
                  GridMismatch);
  CHECK_THROWS_AS(gs_phase_retrieval(s.input, RealField::zeros(s.target_amp.grid()), FourierLens{0.75}, 3,
                                     InitialPhase::zeros()),
                  ZeroField);
  std::vector<double> neg(s.target_amp.values().begin(), s.target_amp.values().end());
  neg[0] = -1.0;
  CHECK_THROWS_AS(gs_phase_retrieval(s.input, RealField(s.target_amp.grid(), neg), FourierLens{0.75}, 3,
                                     InitialPhase::zeros()),
                  DomainError);
}

TEST_CASE("correction hologram") {
  const FourierLens lens{0.75};
  const GridSpec gt = GridSpec::square(64, 1e-4);
  const ComplexField target = generate_mode(ModeSpec::lg(1, 2, 1e-3), gt);
  const ComplexField desired = inverse_fourier_lens_transform(target, lens);

  const RealField zero = correction_hologram(desired, target, lens);
  for (double v : zero.values()) CHECK(std::abs(std::remainder(v, kTwoPi)) < 1e-9);

  const RealField offset = correction_hologram(scale(desired, std::polar(1.0, 0.3)), target, lens);
  double peak = 0.0;
  for (const cplx& v : desired.samples()) peak = std::max(peak, std::abs(v));
  for (std::size_t k = 0; k < gt.size(); ++k) {
    const double v = offset.values()[k];
    CHECK(v >= 0.0);
    CHECK(v < kTwoPi);
    if (std::abs(desired.samples()[k]) >= 1e-4 * peak) {
      CHECK(v == doctest::Approx(kTwoPi - 0.3).epsilon(1e-12));
    } else {
      CHECK(v == 0.0);
    }
  }

  // Applying the correction to a field with arbitrary phase restores the
  // desired phase on the support.
  std::vector<cplx> scrambled(desired.samples().begin(), desired.samples().end());
  for (std::size_t k = 0; k < scrambled.size(); ++k) scrambled[k] *= std::polar(1.0, 0.37 * static_cast<double>(k % 11));
  const ComplexField achieved(desired.grid(), scrambled, desired.wavelength());
  const RealField phi = correction_hologram(achieved, target, lens);
  for (std::size_t k = 0; k < scrambled.size(); ++k) {
    if (std::abs(achieved.samples()[k]) < 1e-4 * peak) continue;
    const cplx fixed = achieved.samples()[k] * std::polar(1.0, phi.values()[k]);
    CHECK(std::abs(std::remainder(std::arg(fixed) - std::arg(desired.samples()[k]), kTwoPi)) < 1e-6);
  }
}

TEST_CASE("simulate with blank holograms is a 4f relay") {
  const ShaperConfig c = small_ideal(ModeSpec::hg(1, 0, kDefaultTargetWaist));
  const PlaneGrids g = plane_grids(c);
  const ComplexField in = generate_mode(c.input, g.slm1);
  const SlmSpec d1 = lattice_slm(c.slm1, g.slm1);
  const SlmSpec d2 = lattice_slm(c.slm2, g.slm2);
  const Hologram z1(d1, std::vector<std::uint8_t>(g.slm1.size(), 0));
  const Hologram z2(d2, std::vector<std::uint8_t>(g.slm2.size(), 0));
  const ComplexField out = simulate(z1, z2, c, in);
  const ComplexField relay = four_f_relay(in, c.lens, c.lens);
  for (std::size_t k = 0; k < g.slm1.size(); ++k) CHECK(std::abs(out.samples()[k] - relay.samples()[k]) < 1e-12);

  const Hologram wrong(d1.nx == 64 ? SlmSpec{} : d1, std::vector<std::uint8_t>(792 * 600, 0));
  CHECK_THROWS_AS(simulate(wrong, z2, c, in), GridMismatch);
}

TEST_CASE("synthesize on a small grid") {
  const ShaperConfig c = small_ideal(ModeSpec::hg(1, 0, kDefaultTargetWaist));
  const SynthesisReport r = synthesize(c);
  CHECK(r.gs_error_trace.size() == 30);
  CHECK(non_increasing(r.gs_error_trace));
  CHECK(r.hologram1.nx() == 64);
  CHECK(r.hologram2.ny() == 64);
  CHECK(r.purity > 0.95);

  // η = purity · P_out / P_in by construction.
  CHECK(r.conversion_efficiency == doctest::Approx(r.purity * r.output_power / r.input_power).epsilon(1e-10));
  CHECK(r.conversion_efficiency == doctest::Approx(conversion_efficiency(r.input_field, r.predicted_output, c.target)).epsilon(1e-10));

  // Replaying the holograms reproduces the prediction exactly.
  const ComplexField replay = simulate(r.hologram1, r.hologram2, c, r.input_field);
  for (std::size_t k = 0; k < replay.samples().size(); ++k) CHECK(replay.samples()[k] == r.predicted_output.samples()[k]);

  // Fixed seed, fixed report.
  const SynthesisReport again = synthesize(c);
  CHECK(again.hologram1 == r.hologram1);
  CHECK(again.hologram2 == r.hologram2);
  CHECK(again.gs_error_trace == r.gs_error_trace);
  CHECK(again.purity == r.purity);
}

TEST_CASE("synthesize with apertures and a pattern target") {
  ShaperConfig c = small_ideal(ModeSpec::hg(2, 0, kDefaultTargetWaist), 64, 10);
  c.target_aperture = Aperture::rectangular(1e-3, 1e-3);
  c.plane2_aperture = Aperture::circular(1e-3);
  const SynthesisReport r = synthesize(c);
  CHECK(r.output_power < r.input_power);

  ModeSpec glyph;
  glyph.family = Pattern{std::string(HOLOSHAPE_TEST_ASSETS) + "/qmc.pgm"};
  glyph.waist = 1.25e-3;
  const SynthesisReport p = synthesize(small_ideal(glyph, 128, 20));
  CHECK(non_increasing(p.gs_error_trace));
  CHECK(p.purity > 0.5);
}

// The remaining cases use the full 512² grid and 100 iterations.

TEST_CASE("ideal HG10 reaches high purity") {
  const SynthesisReport r = synthesize(ShaperConfig::ideal(ModeSpec::hg(1, 0, kDefaultTargetWaist)));
  CHECK(r.gs_error_trace.size() == 100);
  CHECK(r.gs_error_trace.back() < 0.05);
  CHECK(r.purity >= 0.95);
}

TEST_CASE("identity shaping of HG00") {
  const SynthesisReport r = synthesize(ShaperConfig::ideal(ModeSpec::hg(0, 0, kDefaultTargetWaist)));
  CHECK(r.purity >= 0.999);
  CHECK(r.conversion_efficiency >= 0.999);
}

TEST_CASE("quantization is a second-order effect") {
  for (int m : {1, 3}) {
    ShaperConfig c = ShaperConfig::ideal(ModeSpec::hg(m, 0, kDefaultTargetWaist));
    const SynthesisReport q = synthesize(c);
    c.quantize = false;
    const SynthesisReport u = synthesize(c);
    CAPTURE(m);
    CHECK(u.conversion_efficiency >= 0.95);
    CHECK(std::abs(q.conversion_efficiency - u.conversion_efficiency) < 0.02);
  }
}

TEST_CASE("purity does not improve as crosstalk grows") {
  for (int m : {1, 5}) {
    const ShaperConfig c = ShaperConfig::ideal(ModeSpec::hg(m, 0, kDefaultTargetWaist));
    const SynthesisReport r = synthesize(c);
    double last = 1.0;
    for (double px : {0.0, 1.0, 2.0, 3.0}) {
      ShaperConfig x = c;
      x.slm1.crosstalk_sigma = x.slm2.crosstalk_sigma = px * c.slm1.pitch;
      const double p = purity(simulate(r.hologram1, r.hologram2, x, r.input_field), r.target_field).purity;
      CAPTURE(m);
      CAPTURE(px);
      CHECK(p <= last);
      last = p;
    }
  }
}

TEST_CASE("SLM2 misalignment by one pixel costs purity") {
  for (int m : {1, 5}) {
    const ShaperConfig c = ShaperConfig::ideal(ModeSpec::hg(m, 0, kDefaultTargetWaist));
    const SynthesisReport r = synthesize(c);
    const ComplexField shifted = simulate(r.hologram1, r.hologram2.shifted(1, 0), c, r.input_field);
    const double p = purity(shifted, r.target_field).purity;
    CAPTURE(m);
    CHECK(p < r.purity - 0.05);
  }
}

TEST_CASE("realistic preset: purity falls with HG order") {
  double last = 1.0;
  for (int m : {1, 3, 5}) {
    const SynthesisReport r = synthesize(ShaperConfig::realistic(ModeSpec::hg(m, 0, kDefaultTargetWaist)));
    CAPTURE(m);
    CHECK(r.purity <= last);
    last = r.purity;
  }
}
