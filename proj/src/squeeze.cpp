#include "holoshape/squeeze.hpp"

#include <algorithm>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "holoshape/errors.hpp"

namespace holoshape::squeeze {

double db_to_var(double db) {
  if (!std::isfinite(db)) throw DomainError("dB value must be finite");
  return std::pow(10.0, db / 10.0);
}

double var_to_db(double variance) {
  if (!(variance > 0.0)) throw DomainError("variance must be positive to express in dB");
  return 10.0 * std::log10(variance);
}

double propagate_loss(double v_in, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("efficiency must lie in [0, 1]");
  if (!(v_in > 0.0)) throw DomainError("input variance must be positive");
  return eta * v_in + (1.0 - eta) * kVacuumVariance;
}

double infer_eta(double v_in, double v_out) {
  if (!(v_in > 0.0) || !(v_out > 0.0)) throw DomainError("variances must be positive");
  if (v_in == kVacuumVariance) {
    throw Degenerate("input is at the shot-noise limit; efficiency is unidentifiable");
  }
  const double eta = (kVacuumVariance - v_out) / (kVacuumVariance - v_in);
  if (eta < 0.0 || eta > 1.0) {
    std::ostringstream os;
    os << "inferred efficiency " << eta << " clamped to [0, 1]";
    warn(os.str());
    return std::clamp(eta, 0.0, 1.0);
  }
  return eta;
}

double chain(std::span<const double> etas) {
  double total = 1.0;
  for (double e : etas) {
    if (!(e >= 0.0 && e <= 1.0)) throw DomainError("efficiency must lie in [0, 1]");
    total *= e;
  }
  return total;
}

void SqueezeBudget::validate() const {
  if (!(v_in > 0.0)) throw DomainError("input variance must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("efficiency must lie in [0, 1]");
  if (v_anti && !(*v_anti > 0.0)) throw DomainError("anti-squeezed variance must be positive");
  if (anti() * v_in < 1.0 - 1e-12) warn("budget violates the uncertainty bound v_anti·v_in >= 1");
}

NoiseTrace homodyne_scan(const SqueezeBudget& budget, std::span<const double> phases,
                         std::optional<Jitter> jitter) {
  budget.validate();
  const double v_sq = propagate_loss(budget.v_in, budget.eta);
  const double v_an = propagate_loss(budget.anti(), budget.eta);
  std::mt19937_64 rng(jitter ? jitter->seed : 0);
  std::normal_distribution<double> noise(0.0, jitter ? jitter->sigma_db : 0.0);
  NoiseTrace trace;
  trace.samples.reserve(phases.size());
  for (double th : phases) {
    const double c = std::cos(th);
    const double s = std::sin(th);
    double db = var_to_db(v_sq * c * c + v_an * s * s);
    if (jitter && jitter->sigma_db > 0.0) db += noise(rng);
    trace.samples.push_back({th, db});
  }
  return trace;
}

NoiseTrace shot_noise_trace(std::span<const double> phases) {
  NoiseTrace trace;
  for (double th : phases) trace.samples.push_back({th, 0.0});
  return trace;
}

std::vector<double> phase_grid(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
  }
  return out;
}

void write_csv(const NoiseTrace& trace, std::ostream& out) {
  out << "phase_rad,variance_db\n";
  char line[96];
  for (const auto& s : trace.samples) {
    std::snprintf(line, sizeof line, "%.12g,%.12g\n", s.phase, s.variance_db);
    out << line;
  }
}

}  // namespace holoshape::squeeze
