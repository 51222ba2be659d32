#include "holoshape/modes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "blur.hpp"
#include "holoshape/errors.hpp"

namespace holoshape {

namespace {

int parse_index(const std::string& tok, bool allow_negative) {
  int v = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size() || tok.empty()) {
    throw DomainError("bad mode index '" + tok + "'");
  }
  if (!allow_negative && v < 0) throw DomainError("index must be non-negative");
  return v;
}

std::pair<int, int> parse_pair(const std::string& body, bool second_signed) {
  const auto comma = body.find(',');
  if (comma == std::string::npos) throw DomainError("expected two comma-separated indices");
  return {parse_index(body.substr(0, comma), false),
          parse_index(body.substr(comma + 1), second_signed)};
}

// Normalized Hermite functions psi_0..psi_n at t (stable recurrence).
double hermite_function(int n, double t) {
  double prev = 0.0;
  double cur = std::exp(-0.5 * t * t) / std::pow(std::numbers::pi, 0.25);
  for (int k = 1; k <= n; ++k) {
    const double next = std::sqrt(2.0 / k) * t * cur - std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// 1D unit-norm HG profile along one axis.
std::vector<double> hg_axis(int order, double waist, std::size_t n, double pitch,
                            std::size_t center) {
  std::vector<double> v(n);
  const double jac = std::sqrt(std::numbers::sqrt2 / waist);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = (static_cast<double>(k) - static_cast<double>(center)) * pitch;
    v[k] = jac * hermite_function(order, std::numbers::sqrt2 * x / waist);
  }
  return v;
}

// Second-moment radius; a pattern's footprint spans 4·w0, i.e. ±2·w0.
double effective_radius(const ModeSpec& spec) {
  if (const auto* hg = std::get_if<HermiteGauss>(&spec.family)) {
    return spec.waist * std::sqrt((hg->m + hg->n + 1.0) / 2.0);
  }
  if (const auto* lg = std::get_if<LaguerreGauss>(&spec.family)) {
    return spec.waist * std::sqrt((2.0 * lg->p + std::abs(lg->l) + 1.0) / 2.0);
  }
  return spec.waist;
}

double bilinear(const GrayImage& img, double col, double row) {
  // col/row in pixel-center coordinates; outside the raster is dark.
  const double c0 = std::floor(col);
  const double r0 = std::floor(row);
  const double fc = col - c0;
  const double fr = row - r0;
  auto px = [&](long c, long r) -> double {
    if (c < 0 || r < 0 || c >= static_cast<long>(img.width) || r >= static_cast<long>(img.height)) {
      return 0.0;
    }
    return img.at(static_cast<std::size_t>(c), static_cast<std::size_t>(r)) / 255.0;
  };
  const long c = static_cast<long>(c0);
  const long r = static_cast<long>(r0);
  return (1 - fc) * (1 - fr) * px(c, r) + fc * (1 - fr) * px(c + 1, r) +
         (1 - fc) * fr * px(c, r + 1) + fc * fr * px(c + 1, r + 1);
}

ComplexField pattern_mode(const Pattern& pat, const ModeSpec& spec, const GridSpec& grid) {
  std::shared_ptr<const GrayImage> img = pat.image;
  if (!img) {
    if (pat.path.empty()) throw ImageLoad("pattern mode has no image");
    img = std::make_shared<GrayImage>(load_pgm(pat.path));
  }
  const double pixel = 4.0 * spec.waist / static_cast<double>(std::max(img->width, img->height));
  std::vector<double> amp(grid.size());
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double row = grid.y(j) / pixel + 0.5 * static_cast<double>(img->height) - 0.5;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double col = grid.x(i) / pixel + 0.5 * static_cast<double>(img->width) - 0.5;
      amp[grid.index(i, j)] = bilinear(*img, col, row);
    }
  }
  if (pat.smoothing > 0.0) {
    amp = detail::gaussian_blur<double>(amp, grid.nx(), grid.ny(), pat.smoothing / grid.dx(),
                                        pat.smoothing / grid.dy());
  }
  std::vector<cplx> s(amp.begin(), amp.end());
  ComplexField f(grid, std::move(s), spec.wavelength);
  if (!(power(f) > 0.0)) throw ImageLoad("pattern image has no light inside the grid");
  return normalize(f);
}

}  // namespace

ModeFamily parse_mode_family(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("mode must look like HG:m,n, LG:p,l or pattern:<file>");
  std::string kind = text.substr(0, colon);
  std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char c) { return std::toupper(c); });
  const std::string body = text.substr(colon + 1);
  if (kind == "HG") {
    auto [m, n] = parse_pair(body, false);
    return HermiteGauss{m, n};
  }
  if (kind == "LG") {
    auto [p, l] = parse_pair(body, true);
    return LaguerreGauss{p, l};
  }
  if (kind == "PATTERN") {
    if (body.empty()) throw DomainError("pattern mode needs a file path");
    return Pattern{body, nullptr};
  }
  throw DomainError("unknown mode family '" + text.substr(0, colon) + "'");
}

std::string describe(const ModeSpec& spec) {
  std::ostringstream os;
  if (const auto* hg = std::get_if<HermiteGauss>(&spec.family)) {
    os << "HG:" << hg->m << ',' << hg->n;
  } else if (const auto* lg = std::get_if<LaguerreGauss>(&spec.family)) {
    os << "LG:" << lg->p << ',' << lg->l;
  } else {
    os << "pattern:" << std::get<Pattern>(spec.family).path;
  }
  return os.str();
}

void validate(const ModeSpec& spec) {
  if (!(spec.waist > 0.0)) throw DomainError("waist must be positive");
  if (!(spec.wavelength > 0.0)) throw DomainError("wavelength must be positive");
  if (const auto* hg = std::get_if<HermiteGauss>(&spec.family)) {
    if (hg->m < 0 || hg->n < 0) throw DomainError("index must be non-negative");
  } else if (const auto* lg = std::get_if<LaguerreGauss>(&spec.family)) {
    if (lg->p < 0) throw DomainError("index must be non-negative");
  } else if (std::get<Pattern>(spec.family).smoothing < 0.0) {
    throw DomainError("pattern smoothing must be non-negative");
  }
}

double hermite_poly(int n, double x) {
  if (n < 0) throw DomainError("hermite_poly: order must be non-negative");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 2; k <= n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * (k - 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_poly(int p, int a, double x) {
  if (p < 0 || a < 0) throw DomainError("laguerre_poly: indices must be non-negative");
  double prev = 1.0;
  if (p == 0) return prev;
  double cur = 1.0 + a - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

ComplexField generate_mode(const ModeSpec& spec, const GridSpec& grid) {
  validate(spec);
  const auto check_extent = [&] {
    if (std::min(grid.extent_x(), grid.extent_y()) < 4.0 * effective_radius(spec)) {
      std::ostringstream os;
      os << describe(spec) << ": grid extent below 4 effective mode radii";
      warn(os.str());
    }
  };
  if (!std::holds_alternative<Pattern>(spec.family)) check_extent();

  if (const auto* hg = std::get_if<HermiteGauss>(&spec.family)) {
    const auto ux = hg_axis(hg->m, spec.waist, grid.nx(), grid.dx(), grid.nx() / 2);
    const auto uy = hg_axis(hg->n, spec.waist, grid.ny(), grid.dy(), grid.ny() / 2);
    std::vector<cplx> s(grid.size());
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      for (std::size_t i = 0; i < grid.nx(); ++i) s[grid.index(i, j)] = ux[i] * uy[j];
    }
    return ComplexField(grid, std::move(s), spec.wavelength);
  }

  if (const auto* lg = std::get_if<LaguerreGauss>(&spec.family)) {
    const int p = lg->p;
    const int al = std::abs(lg->l);
    const double w = spec.waist;
    const double norm = std::sqrt(2.0 / std::numbers::pi *
                                  std::exp(std::lgamma(p + 1.0) - std::lgamma(p + al + 1.0))) / w;
    return ComplexField::sample(grid, spec.wavelength, [&](double x, double y) {
      const double r2 = x * x + y * y;
      const double rho = std::numbers::sqrt2 * std::sqrt(r2) / w;
      const double radial = norm * std::pow(rho, al) * laguerre_poly(p, al, 2.0 * r2 / (w * w)) *
                            std::exp(-r2 / (w * w));
      if (lg->l == 0) return cplx(radial, 0.0);
      return std::polar(radial, lg->l * std::atan2(y, x));
    });
  }

  ComplexField f = pattern_mode(std::get<Pattern>(spec.family), spec, grid);
  check_extent();
  return f;
}

std::vector<ComplexField> mode_basis(int max_order, double waist, const GridSpec& grid,
                                     double wavelength) {
  if (max_order < 0) throw DomainError("mode_basis: max_order must be non-negative");
  std::vector<ComplexField> basis;
  basis.reserve(static_cast<std::size_t>((max_order + 1) * (max_order + 2) / 2));
  for (int order = 0; order <= max_order; ++order) {
    for (int m = order; m >= 0; --m) {
      ModeSpec s{HermiteGauss{m, order - m}, waist, wavelength};
      basis.push_back(generate_mode(s, grid));
    }
  }
  return basis;
}

}  // namespace holoshape
