#include "holoshape/grid.hpp"

#include <cmath>
#include <sstream>

#include "holoshape/errors.hpp"

namespace holoshape {

namespace {
bool close_rel(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}
}  // namespace

GridSpec::GridSpec(std::size_t nx, std::size_t ny, double dx, double dy)
    : nx_(nx), ny_(ny), dx_(dx), dy_(dy) {
  if (nx < 2 || ny < 2) throw DomainError("grid needs at least 2 samples per axis");
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy)) {
    throw DomainError("grid pitch must be positive and finite");
  }
}

bool GridSpec::same_pitch(const GridSpec& other) const noexcept {
  return close_rel(dx_, other.dx_) && close_rel(dy_, other.dy_);
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* context) {
  if (a == b) return;
  std::ostringstream os;
  os << context << ": grid mismatch (" << a.nx() << "x" << a.ny() << " @ " << a.dx() << "," << a.dy()
     << " vs " << b.nx() << "x" << b.ny() << " @ " << b.dx() << "," << b.dy() << ")";
  throw GridMismatch(os.str());
}

}  // namespace holoshape
