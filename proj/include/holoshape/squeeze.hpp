#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace holoshape::squeeze {

// Quadrature variances are linear and normalized to the shot-noise limit
// (vacuum variance = 1, i.e. 0 dB).
inline constexpr double kVacuumVariance = 1.0;

double db_to_var(double db);
// Throws DomainError for v <= 0.
double var_to_db(double variance);

// V_out = η·V_in + (1 - η)·V_vac. Throws DomainError unless η ∈ [0, 1] and V_in > 0.
double propagate_loss(double v_in, double eta);

// Inverse of propagate_loss: η = (V_vac - V_out) / (V_vac - V_in). Results
// outside [0, 1] are clamped with a warning. Throws Degenerate when V_in == 1.
double infer_eta(double v_in, double v_out);

// Product of sequential passive efficiencies (1 for an empty chain).
double chain(std::span<const double> etas);

struct SqueezeBudget {
  double v_in = 1.0;                 // squeezed quadrature
  std::optional<double> v_anti;      // anti-squeezed quadrature; pure state 1/v_in when unset
  double eta = 1.0;

  double anti() const { return v_anti.value_or(1.0 / v_in); }
  // Warns when v_anti·v_in < 1; throws DomainError for v_in <= 0 or η outside [0, 1].
  void validate() const;
};

struct NoiseSample {
  double phase = 0.0;        // local-oscillator phase, radians
  double variance_db = 0.0;  // relative to the shot-noise limit
};

// Record-only spectrum-analyzer settings.
struct TraceMetadata {
  double analysis_frequency_hz = 3e6;
  double rbw_hz = 100e3;
  double vbw_hz = 100.0;
};

struct NoiseTrace {
  std::vector<NoiseSample> samples;
  TraceMetadata metadata;
};

struct Jitter {
  double sigma_db = 0.0;
  std::uint64_t seed = 42;
};

// Applies the loss to both quadratures, then
// V(θ) = V_sq'·cos²θ + V_anti'·sin²θ, reported in dB.
NoiseTrace homodyne_scan(const SqueezeBudget& budget, std::span<const double> phases,
                         std::optional<Jitter> jitter = std::nullopt);
NoiseTrace shot_noise_trace(std::span<const double> phases);

// `count` evenly spaced LO phases over [0, 2π).
std::vector<double> phase_grid(std::size_t count);

// "phase_rad,variance_db" header, one row per sample.
void write_csv(const NoiseTrace& trace, std::ostream& out);

}  // namespace holoshape::squeeze
