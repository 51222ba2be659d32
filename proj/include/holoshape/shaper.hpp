#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holoshape/field.hpp"
#include "holoshape/modes.hpp"
#include "holoshape/optics.hpp"
#include "holoshape/slm.hpp"

namespace holoshape {

struct InitialPhase {
  // Matched: a quadratic phase whose curvature spreads the input's Fourier
  // spot to the target's narrower rms width at plane 2 (zero if the target
  // is not wider). It starts GS near the smooth geometric solution.
  enum class Kind { Zeros, SeededRandom, Quadratic, Matched };
  Kind kind = Kind::Matched;
  std::uint64_t seed = 42;
  double curvature = 0.0;  // rad/m², Quadratic only

  static InitialPhase zeros() { return {Kind::Zeros}; }
  static InitialPhase random(std::uint64_t seed) { return {Kind::SeededRandom, seed}; }
  static InitialPhase quadratic(double curvature) { return {Kind::Quadratic, 0, curvature}; }
  static InitialPhase matched() { return {Kind::Matched}; }
};

struct GsResult {
  RealField phase;                 // plane-1 phase after the last iteration
  std::vector<double> error_trace; // plane-2 amplitude mismatch after each iteration
};

// Two-plane Gerchberg–Saxton between the front and back focal planes of
// `lens`: |input| is imposed at plane 1, `target_amplitude` at plane 2 (on
// fourier_plane_grid of the input grid). Both are normalized to unit power
// first; the trace entry is sqrt(sum (|F| - A)² dA) with |F| renormalized.
// Curvature used by InitialPhase::matched() for this pair of amplitudes.
double matched_curvature(const RealField& input_amplitude, const RealField& target_amplitude,
                         const FourierLens& lens, double wavelength);

GsResult gs_phase_retrieval(const ComplexField& input, const RealField& target_amplitude,
                            const FourierLens& lens, int iterations, const InitialPhase& init);

// Phase for SLM2 that turns the achieved plane-2 field into the inverse lens
// transform of `target`. Zero where the achieved amplitude is below
// 1e-4 of its peak. Values are wrapped to [0, 2π).
RealField correction_hologram(const ComplexField& achieved_at_plane2, const ComplexField& target,
                              const FourierLens& lens);

// The beam shaping system: SLM1 -> lens -> SLM2 -> lens -> target plane.
// The computation grid (n × n) doubles as each SLM's pixel lattice, so the
// device pitch and crosstalk are rescaled onto the plane's sample pitch.
// Default target waist at the target plane. Eight times below the 5 mm input
// waist, so the plane-2 target is eight times wider than the input's Fourier
// spot; phase-only shaping needs that headroom. A ×8 telescope after the
// target plane restores a 5 mm collimated waist.
inline constexpr double kDefaultTargetWaist = 5e-3 / 8.0;

struct ShaperConfig {
  int iterations = 100;
  InitialPhase initial_phase;
  FourierLens lens{0.75};
  ModeSpec input = ModeSpec::hg(0, 0, 5e-3);
  ModeSpec target = ModeSpec::hg(1, 0, kDefaultTargetWaist);
  SlmSpec slm1;
  SlmSpec slm2;
  bool quantize = true;
  std::size_t grid_size = 512;
  // Plane-1 sample pitch; 0 makes the grid span eight times the larger of
  // the input and target waists.
  double grid_pitch = 0.0;
  std::optional<Aperture> plane2_aperture;
  std::optional<Aperture> target_aperture;

  void validate() const;
  static void validate_mode(const ModeSpec& spec);
  // Ideal devices: m = 1, no crosstalk, no apertures, 256 levels.
  static ShaperConfig ideal(const ModeSpec& target);
  // 256 levels, m = 0.95, crosstalk 0.5 px, circular stop at the SLM2 plane.
  static ShaperConfig realistic(const ModeSpec& target);
};

// Circular stop at the SLM2 plane used by the realistic preset: radius twice
// the Fourier-plane waist of the target's Gaussian envelope.
Aperture realistic_stop(const ShaperConfig& config);

// Grids of the three planes for a config.
struct PlaneGrids {
  GridSpec slm1;
  GridSpec slm2;
  GridSpec target;
};
PlaneGrids plane_grids(const ShaperConfig& config);

// SLM model mapped onto a plane's sample lattice.
SlmSpec lattice_slm(const SlmSpec& device, const GridSpec& plane);

struct SynthesisReport {
  Hologram hologram1;
  Hologram hologram2;
  ComplexField input_field;
  ComplexField target_field;
  ComplexField predicted_output;
  std::vector<double> gs_error_trace;
  double purity = 0.0;
  double visibility = 0.0;
  double conversion_efficiency = 0.0;
  double output_power = 0.0;
  double input_power = 0.0;
};

SynthesisReport synthesize(const ShaperConfig& config);

// Forward model shared with synthesize.
ComplexField simulate(const Hologram& hologram1, const Hologram& hologram2,
                      const ShaperConfig& config, const ComplexField& input_field);
ComplexField simulate_phases(const RealField& phase1, const RealField& phase2,
                             const ShaperConfig& config, const ComplexField& input_field);

}  // namespace holoshape
