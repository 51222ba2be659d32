#pragma once

#include "holoshape/field.hpp"
#include "holoshape/modes.hpp"

namespace holoshape {

struct PurityReport {
  double purity = 0.0;         // |<c,b>|² / (P_b · P_c)
  double visibility = 0.0;     // 2|<c,b>| / (P_b + P_c)
  double overlap_phase = 0.0;  // arg <c,b>
};

// Normalized mode overlap of a generated field b with a reference mode c.
// Throws ZeroField if either has no power, GridMismatch if grids differ.
PurityReport purity(const ComplexField& generated, const ComplexField& reference);

// Power delivered into the unit-power target mode relative to input power.
double conversion_efficiency(const ComplexField& input, const ComplexField& output,
                             const ModeSpec& target);

struct InterferogramOptions {
  double reference_waist = 6e-3;  // meters
  // Carrier along x in cycles per meter; <= 0 picks a quarter of Nyquist.
  double tilt = 0.0;
  double relative_power = 1.0;    // reference amplitude is sqrt(relative_power) · g
};

double default_tilt(const GridSpec& grid);

// I = |b + sqrt(P_ref) · g · exp(i 2π tilt x)|² with g a unit-power Gaussian.
// Throws Undersampled when a fringe spans fewer than 4 samples.
RealField interferogram(const ComplexField& generated, const InterferogramOptions& options = {});

struct Demodulation {
  RealField phase;  // radians in (-π, π]
  RealField mask;   // 1 where the sideband amplitude exceeds threshold·max, else 0
  ComplexField sideband;  // baseband-shifted sideband, ∝ b · g
};

// Off-axis demodulation: isolate the sideband carrying b·g* with a circular
// window of radius carrier/2, shift it to baseband and take its argument.
// Throws NoCarrier when the windowed sideband holds < 1% of the spectral power.
Demodulation demodulate_interferogram(const RealField& interferogram, double carrier,
                                      double mask_threshold = 0.1);

// Rebuilds sqrt(I)·exp(i·phase) and scores it against the target mode.
double intensity_purity(const RealField& intensity, const RealField& recovered_phase,
                        const ModeSpec& target, double wavelength = kDefaultWavelength);

// Accumulated unwrapped phase of a field along a centered circle, sampled
// with bilinear interpolation of the complex field.
double phase_winding(const ComplexField& field, double radius, std::size_t samples = 720);

}  // namespace holoshape
