// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every check runs at its full tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holoshape/cli.hpp"
#include "holoshape/field_io.hpp"
#include "holoshape/metrics.hpp"
#include "holoshape/modes.hpp"
#include "holoshape/optics.hpp"
#include "holoshape/pgm.hpp"
#include "holoshape/shaper.hpp"
#include "holoshape/squeeze.hpp"

using namespace holoshape;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) {
      pass = false;
      detail += " [fail]";
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool non_increasing(const std::vector<double>& t) {
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (t[k] > t[k - 1] + 1e-12) return false;
  }
  return true;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

ModeSpec glyph_target() {
  ModeSpec s;
  s.family = Pattern{std::string(HOLOSHAPE_TEST_ASSETS) + "/qmc.pgm"};
  s.waist = kDefaultTargetWaist;
  return s;
}

// Synthesis runs are shared between criteria 6, 7 and 8.
class Runs {
 public:
  const SynthesisReport& ideal(const ModeSpec& t) { return get("ideal " + describe(t), ShaperConfig::ideal(t)); }
  const SynthesisReport& realistic(const ModeSpec& t) {
    return get("realistic " + describe(t), ShaperConfig::realistic(t));
  }

 private:
  const SynthesisReport& get(const std::string& key, const ShaperConfig& c) {
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, synthesize(c)).first;
    return it->second;
  }
  std::map<std::string, SynthesisReport> cache_;
};

Outcome criterion1() {
  Outcome o;
  const double v = squeeze::propagate_loss(squeeze::db_to_var(-5.22), 0.6);
  const double db = squeeze::var_to_db(v);
  o.require(std::abs(db + 2.36) <= 0.05, "v_out " + fmt("%.4f", db) + " dB vs -2.36 +/- 0.05");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const double v_in = squeeze::db_to_var(-5.22);
  const double v_out = squeeze::db_to_var(-2.65);
  const double eta = squeeze::infer_eta(v_in, v_out);
  o.require(std::abs(eta - 0.653) <= 0.001, "eta " + fmt("%.5f", eta) + " vs 0.653 +/- 0.001");
  const double back = squeeze::propagate_loss(v_in, eta);
  o.require(std::abs(back - v_out) <= 1e-12, "round trip error " + fmt("%.2e", std::abs(back - v_out)));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const std::vector<double> stages{0.80, 0.98};
  const double c = squeeze::chain(stages);
  o.require(std::abs(c - 0.784) <= 1e-12, "chain " + fmt("%.6f", c));
  o.require(std::abs(c - 0.77) <= 0.02, "distance to 0.77 is " + fmt("%.4f", std::abs(c - 0.77)));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const double w0 = 5e-3, f = 0.75, lambda = 1080e-9;
  const std::size_t n = 1024;
  const GridSpec g = GridSpec::square(n, w0 * std::sqrt(std::numbers::pi / static_cast<double>(n)));
  ModeSpec gauss = ModeSpec::hg(0, 0, w0);
  gauss.wavelength = lambda;
  const ComplexField out = fourier_lens_transform(generate_mode(gauss, g), FourierLens{f});
  const GridSpec& q = out.grid();
  double p = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < q.ny(); ++j) {
    for (std::size_t i = 0; i < q.nx(); ++i) {
      const double w = std::norm(out.at(i, j));
      p += w;
      m2 += w * (q.x(i) * q.x(i) + q.y(j) * q.y(j));
    }
  }
  // Radial second moment of a Gaussian intensity: <r²> = w²/2.
  const double waist = std::sqrt(2.0 * m2 / p);
  const double rel = std::abs(waist - 51.57e-6) / 51.57e-6;
  o.require(rel <= 0.005, "waist " + fmt("%.3f", waist * 1e6) + " um, rel. error " + fmt("%.2e", rel));
  return o;
}

Outcome criterion5() {
  Outcome o;
  const double w = 1e-3;
  const GridSpec g = GridSpec::square(512, 8 * w / 512);
  const auto basis = mode_basis(5, w, g);
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = a + 1; b < basis.size(); ++b) worst = std::max(worst, std::abs(inner_product(basis[a], basis[b])));
  }
  o.require(worst < 1e-6, "max off-diagonal " + fmt("%.2e", worst));
  const GridSpec lg_grid = GridSpec::square(512, 10 * w / 512);
  const double winding = phase_winding(generate_mode(ModeSpec::lg(3, 3, w), lg_grid), 1.6 * w);
  o.require(std::abs(winding - 6 * std::numbers::pi) <= 0.01,
            "LG33 winding " + fmt("%.5f", winding / std::numbers::pi) + " pi");
  return o;
}

Outcome criterion6(Runs& runs) {
  Outcome o;
  std::vector<std::pair<std::string, ModeSpec>> targets;
  for (int m = 1; m <= 5; ++m) targets.push_back({"HG" + std::to_string(m) + "0", ModeSpec::hg(m, 0, kDefaultTargetWaist)});
  targets.push_back({"LG33", ModeSpec::lg(3, 3, kDefaultTargetWaist)});
  targets.push_back({"glyph", glyph_target()});
  for (const auto& [name, t] : targets) {
    const auto start = std::chrono::steady_clock::now();
    const SynthesisReport& r = runs.ideal(t);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = r.gs_error_trace.size() == 100 && non_increasing(r.gs_error_trace) && secs < 60.0;
    o.require(ok, name + " monotone, final " + fmt("%.4f", r.gs_error_trace.back()) + " in " + fmt("%.1f", secs) + " s");
  }
  const double hg10 = runs.ideal(ModeSpec::hg(1, 0, kDefaultTargetWaist)).gs_error_trace.back();
  o.require(hg10 < 0.05, "HG10 final mismatch " + fmt("%.4f", hg10) + " < 0.05");
  return o;
}

Outcome criterion7(Runs& runs) {
  Outcome o;
  for (int m = 1; m <= 5; ++m) {
    const double p = runs.ideal(ModeSpec::hg(m, 0, kDefaultTargetWaist)).purity;
    const double floor = m == 1 ? 0.95 : 0.90;
    o.require(p >= floor, "ideal HG" + std::to_string(m) + "0 " + fmt("%.4f", p));
  }
  double prev = 2.0;
  std::string trend = "realistic";
  bool decreasing = true;
  for (int m = 1; m <= 5; ++m) {
    const double p = runs.realistic(ModeSpec::hg(m, 0, kDefaultTargetWaist)).purity;
    trend += " " + fmt("%.4f", p);
    decreasing = decreasing && p < prev;
    prev = p;
  }
  o.require(decreasing, trend + " strictly decreasing");
  return o;
}

Outcome criterion8(Runs& runs) {
  Outcome o;
  const std::vector<std::pair<std::string, ModeSpec>> targets{{"HG10", ModeSpec::hg(1, 0, kDefaultTargetWaist)},
                                                              {"HG30", ModeSpec::hg(3, 0, kDefaultTargetWaist)},
                                                              {"LG33", ModeSpec::lg(3, 3, kDefaultTargetWaist)}};
  for (const char* preset : {"ideal", "realistic"}) {
    for (const auto& [name, t] : targets) {
      const SynthesisReport& r = std::string(preset) == "ideal" ? runs.ideal(t) : runs.realistic(t);
      // Band-limited resampling gives the fringes enough samples per waist.
      const ComplexField b = fourier_upsample(r.predicted_output, 4);
      InterferogramOptions opt;
      opt.relative_power = power(b);
      const Demodulation d = demodulate_interferogram(interferogram(b, opt), default_tilt(b.grid()));
      const double ip = intensity_purity(intensity(b), d.phase, t);
      o.require(std::abs(ip - r.purity) <= 0.05,
                std::string(preset) + " " + name + " " + fmt("%.4f", ip) + " vs " + fmt("%.4f", r.purity));
    }
  }
  return o;
}

int cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

Outcome criterion9() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "holoshape_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream(dir / "run.json") << R"({"preset": "realistic", "iterations": 25, "grid": {"size": 128},
      "target": {"mode": "HG:2,0"}, "initial_phase": {"kind": "random"}})";
  }
  bool ran = true;
  for (const char* sub : {"a", "b"}) {
    ran = ran && cli({"--seed", "7", "--out-dir", (dir / sub).string(), "synth", "--config", (dir / "run.json").string()}) == 0;
    ran = ran && cli({"--seed", "7", "--out-dir", (dir / sub).string(), "squeeze", "--vin-db", "-5.22", "--eta",
                      "0.6", "--scan", "90", "--jitter-db", "0.1"}) == 0;
  }
  o.require(ran, "CLI runs exit 0");
  bool same = true;
  for (const char* file : {"report.json", "slm1.pgm", "slm2.pgm", "predicted.cf64", "scan.csv"}) {
    const std::string a = slurp(dir / "a" / file);
    same = same && !a.empty() && a == slurp(dir / "b" / file);
  }
  o.require(same, "report, holograms, field and CSV byte-identical");

  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd(0.0, 1.0);
  const GridSpec g(37, 23, 1.234e-5, 9.87e-6);
  std::vector<cplx> s(g.size());
  for (auto& z : s) z = {nd(rng), nd(rng) * 1e-300};
  s[0] = {-0.0, std::numeric_limits<double>::denorm_min()};
  const ComplexField f(g, s, 1064.5e-9);
  save_cf64(f, dir / "rt.cf64");
  const ComplexField back = load_cf64(dir / "rt.cf64");
  bool exact = back.grid() == g && back.wavelength() == f.wavelength();
  for (std::size_t k = 0; exact && k < g.size(); ++k) {
    exact = std::signbit(back.samples()[k].real()) == std::signbit(s[k].real()) && back.samples()[k] == s[k];
  }
  o.require(exact, "CF64 bit-exact");

  GrayImage img{61, 17, std::vector<std::uint8_t>(61 * 17)};
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng());
  save_pgm(img, dir / "rt.pgm");
  o.require(load_pgm(dir / "rt.pgm") == img, "PGM bit-exact");
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  Runs runs;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"squeezing prediction", criterion1},
      {"efficiency inversion", criterion2},
      {"loss chain", criterion3},
      {"Fourier waist", criterion4},
      {"mode orthonormality and winding", criterion5},
      {"GS monotonicity", [&] { return criterion6(runs); }},
      {"shaping purity and trend", [&] { return criterion7(runs); }},
      {"interferometric purity", [&] { return criterion8(runs); }},
      {"determinism and formats", criterion9},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
