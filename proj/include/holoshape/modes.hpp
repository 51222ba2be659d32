#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "holoshape/field.hpp"
#include "holoshape/pgm.hpp"

namespace holoshape {

struct HermiteGauss {
  int m = 0;
  int n = 0;
};

struct LaguerreGauss {
  int p = 0;
  int l = 0;
};

// Amplitude target taken from an 8-bit image. Gray values map linearly to
// amplitude in [0, 1]; the phase is flat. The image is scaled so that its
// longer side spans 4·w0 and is smoothed by a Gaussian of the given sigma.
struct Pattern {
  std::string path;
  std::shared_ptr<const GrayImage> image;  // used instead of `path` when set
  double smoothing = 40e-6;                // meters (two 20 µm SLM pixels)
};

using ModeFamily = std::variant<HermiteGauss, LaguerreGauss, Pattern>;

struct ModeSpec {
  ModeFamily family = HermiteGauss{};
  double waist = 5e-3;
  double wavelength = kDefaultWavelength;

  static ModeSpec hg(int m, int n, double waist = 5e-3) { return {HermiteGauss{m, n}, waist}; }
  static ModeSpec lg(int p, int l, double waist = 5e-3) { return {LaguerreGauss{p, l}, waist}; }
};

// Parses "HG:m,n", "LG:p,l" or "pattern:<file>". Throws DomainError.
ModeFamily parse_mode_family(const std::string& text);
std::string describe(const ModeSpec& spec);
// Throws DomainError for non-positive waist / wavelength or bad indices.
void validate(const ModeSpec& spec);

// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite_poly(int n, double x);
// Associated Laguerre polynomial L_p^a(x) by the three-term recurrence.
double laguerre_poly(int p, int a, double x);

// Unit-power mode at its waist plane (flat wavefront apart from the LG
// azimuthal term). HG/LG use analytic normalization; patterns are normalized
// numerically.
ComplexField generate_mode(const ModeSpec& spec, const GridSpec& grid);

// HG(m, n) for all m + n <= max_order, ordered by total order and then by
// descending m: HG00, HG10, HG01, HG20, HG11, HG02, ...
std::vector<ComplexField> mode_basis(int max_order, double waist, const GridSpec& grid,
                                     double wavelength = kDefaultWavelength);

}  // namespace holoshape
