#include "holoshape/field.hpp"

#include <cmath>

#include "holoshape/errors.hpp"
#include "holoshape/kernels.hpp"

namespace holoshape {

ComplexField::ComplexField(GridSpec grid, std::vector<cplx> samples, double wavelength)
    : grid_(grid), samples_(std::move(samples)), wavelength_(wavelength) {
  if (samples_.size() != grid_.size()) {
    throw GridMismatch("sample count does not match grid dimensions");
  }
  if (!(wavelength_ > 0.0)) throw DomainError("wavelength must be positive");
}

ComplexField ComplexField::zeros(GridSpec grid, double wavelength) {
  return ComplexField(grid, std::vector<cplx>(grid.size()), wavelength);
}

ComplexField ComplexField::with_grid(const GridSpec& grid) const {
  if (!grid.same_shape(grid_)) throw GridMismatch("with_grid: shape differs");
  return ComplexField(grid, samples_, wavelength_);
}

ComplexField ComplexField::with_wavelength(double wavelength) const {
  return ComplexField(grid_, samples_, wavelength);
}

RealField::RealField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw GridMismatch("value count does not match grid dimensions");
  }
}

RealField RealField::zeros(GridSpec grid) {
  return RealField(grid, std::vector<double>(grid.size()));
}

cplx inner_product(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  return kernels::dot_conj(a.samples(), b.samples()) * a.grid().cell_area();
}

// Shares the inner-product reduction so power(a) == inner_product(a, a).real()
// holds bit-for-bit.
double power(const ComplexField& a) {
  return (kernels::dot_conj(a.samples(), a.samples()) * a.grid().cell_area()).real();
}

ComplexField normalize(const ComplexField& a) {
  const double p = power(a);
  if (!(p > 0.0)) throw ZeroField("cannot normalize a zero-power field");
  return scale(a, 1.0 / std::sqrt(p));
}

ComplexField scale(const ComplexField& a, cplx factor) {
  std::vector<cplx> out(a.samples().begin(), a.samples().end());
  for (auto& v : out) v *= factor;
  return ComplexField(a.grid(), std::move(out), a.wavelength());
}

ComplexField add(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a.grid(), b.grid(), "add");
  std::vector<cplx> out(a.grid().size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.samples()[k] + b.samples()[k];
  return ComplexField(a.grid(), std::move(out), a.wavelength());
}

ComplexField multiply(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a.grid(), b.grid(), "multiply");
  std::vector<cplx> out(a.grid().size());
  kernels::multiply(a.samples(), b.samples(), out);
  return ComplexField(a.grid(), std::move(out), a.wavelength());
}

RealField amplitude(const ComplexField& a) {
  std::vector<double> v(a.grid().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::abs(a.samples()[k]);
  return RealField(a.grid(), std::move(v));
}

RealField intensity(const ComplexField& a) {
  std::vector<double> v(a.grid().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::norm(a.samples()[k]);
  return RealField(a.grid(), std::move(v));
}

RealField phase(const ComplexField& a) {
  std::vector<double> v(a.grid().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::arg(a.samples()[k]);
  return RealField(a.grid(), std::move(v));
}

ComplexField polar(const RealField& amp, const RealField& ph, double wavelength) {
  require_same_grid(amp.grid(), ph.grid(), "polar");
  std::vector<cplx> out(amp.grid().size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::polar(amp.values()[k], ph.values()[k]);
  return ComplexField(amp.grid(), std::move(out), wavelength);
}

CropPadResult crop_or_pad(const ComplexField& a, const GridSpec& target) {
  const GridSpec& src = a.grid();
  if (!src.same_pitch(target)) throw GridMismatch("crop_or_pad: pitch differs from source");
  std::vector<cplx> out(target.size());
  // Offsets keep the origin sample (n/2) aligned between the two grids.
  const long ox = static_cast<long>(target.nx() / 2) - static_cast<long>(src.nx() / 2);
  const long oy = static_cast<long>(target.ny() / 2) - static_cast<long>(src.ny() / 2);
  double kept = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < src.ny(); ++j) {
    for (std::size_t i = 0; i < src.nx(); ++i) {
      const cplx v = a.at(i, j);
      const double e = std::norm(v);
      total += e;
      const long ti = static_cast<long>(i) + ox;
      const long tj = static_cast<long>(j) + oy;
      if (ti < 0 || tj < 0 || ti >= static_cast<long>(target.nx()) ||
          tj >= static_cast<long>(target.ny())) {
        continue;
      }
      out[target.index(static_cast<std::size_t>(ti), static_cast<std::size_t>(tj))] = v;
      kept += e;
    }
  }
  const double discarded = total > 0.0 ? (total - kept) / total : 0.0;
  return {ComplexField(target, std::move(out), a.wavelength()), discarded};
}

}  // namespace holoshape
