#include "holoshape/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "holoshape/errors.hpp"
#include "holoshape/field_io.hpp"
#include "holoshape/metrics.hpp"
#include "holoshape/modes.hpp"
#include "holoshape/pgm.hpp"
#include "holoshape/run_config.hpp"
#include "holoshape/shaper.hpp"
#include "holoshape/squeeze.hpp"
#include "json.hpp"

namespace holoshape::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 42;
  std::string out_dir = "out";
};

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Config:
    case ErrorKind::GridMismatch:
    case ErrorKind::ImageLoad:
    case ErrorKind::HologramFormat:
    case ErrorKind::FieldFormat:
      return kUsage;
    default:
      return kNumerical;
  }
}

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

void write_render(const RealField& values, const fs::path& pgm_path, const std::string& quantity) {
  const LinearRender r = render_linear(values);
  save_pgm(r.image, pgm_path);
  ojson side;
  side["quantity"] = quantity;
  side["scaling"] = "linear";
  side["min"] = r.min;
  side["max"] = r.max;
  fs::path sidecar = pgm_path;
  sidecar.replace_extension(".json");
  write_text(sidecar, side.dump(2) + "\n");
}

ModeFamily family_arg(const std::string& text) {
  try {
    return parse_mode_family(text);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------

// Defaults reproduce the synth target plane: 512 samples over 4 cm.
struct ModeRenderArgs {
  std::string mode;
  double waist = kDefaultTargetWaist;
  std::size_t grid = 512;
  double extent = 4e-2;
  std::string out = "mode";
};

int mode_render(const ModeRenderArgs& a, const Globals& g, std::ostream& out) {
  ModeSpec spec{family_arg(a.mode), a.waist};
  try {
    validate(spec);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (a.grid < 2 || !(a.extent > 0.0)) throw ConfigError("grid and extent must be positive");
  const double pitch = a.extent / static_cast<double>(a.grid);
  const ComplexField field = generate_mode(spec, GridSpec::square(a.grid, pitch));
  const fs::path dir = prepare_dir(g.out_dir);
  save_cf64(field, dir / (a.out + ".cf64"));
  write_render(intensity(field), dir / (a.out + ".pgm"), "intensity");
  out << "wrote " << (dir / (a.out + ".cf64")).string() << " and " << (dir / (a.out + ".pgm")).string()
      << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

int synth(const std::string& config_path, const Globals& g, bool out_dir_given, std::ostream& out) {
  RunConfig rc = load_run_config(config_path, g.seed);
  const fs::path dir = prepare_dir(out_dir_given ? fs::path(g.out_dir) : rc.output_dir);
  const SynthesisReport r = synthesize(rc.shaper);
  for (double v : r.gs_error_trace) {
    if (!std::isfinite(v)) throw DomainError("GS produced a non-finite error");
  }
  save_hologram(r.hologram1, dir / "slm1.pgm");
  save_hologram(r.hologram2, dir / "slm2.pgm");
  save_cf64(r.predicted_output, dir / "predicted.cf64");
  if (rc.render_intensity) write_render(intensity(r.predicted_output), dir / "predicted.pgm", "intensity");
  write_text(dir / "report.json", report_json(r, rc.shaper));
  out << "purity " << fixed(r.purity, 4) << ", eta " << fixed(r.conversion_efficiency, 4) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct MetricsArgs {
  std::string field;
  std::string target;
  std::string reference;
  double waist = kDefaultTargetWaist;
  std::string interferogram;
  double tilt = 0.0;
  double reference_waist = 6e-3;
  std::size_t upsample = 4;
};

int metrics(const MetricsArgs& a, const Globals& g, std::ostream& out) {
  if (a.target.empty() == a.reference.empty()) {
    throw ConfigError("give exactly one of --target or --reference");
  }
  const ComplexField b = load_cf64(a.field);
  ComplexField c = b;
  std::optional<ModeSpec> target;
  if (!a.target.empty()) {
    target = ModeSpec{family_arg(a.target), a.waist, b.wavelength()};
    try {
      validate(*target);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    c = generate_mode(*target, b.grid());
  } else {
    c = load_cf64(a.reference);
  }
  const PurityReport pr = purity(b, c);
  ojson doc;
  doc["purity"] = pr.purity;
  doc["visibility"] = pr.visibility;
  doc["overlap_phase"] = pr.overlap_phase;

  if (!a.interferogram.empty()) {
    if (a.upsample < 1) throw ConfigError("--upsample must be at least 1");
    // Band-limited resampling keeps the sideband window from clipping the
    // field's spectrum on grids with few samples per waist.
    const ComplexField fine = a.upsample > 1 ? fourier_upsample(b, a.upsample) : b;
    InterferogramOptions opt;
    opt.reference_waist = a.reference_waist;
    opt.tilt = a.tilt;
    opt.relative_power = power(fine);
    const RealField fringes = interferogram(fine, opt);
    fs::path path(a.interferogram);
    if (path.is_relative()) path = prepare_dir(g.out_dir) / path;
    write_render(fringes, path, "interferogram");
    const double carrier = a.tilt > 0.0 ? a.tilt : default_tilt(fine.grid());
    const Demodulation d = demodulate_interferogram(fringes, carrier);
    ojson ifg;
    ifg["carrier_per_m"] = carrier;
    ifg["upsample"] = a.upsample;
    if (target) ifg["intensity_purity"] = intensity_purity(intensity(fine), d.phase, *target, b.wavelength());
    if (target) {
      if (const auto* lg = std::get_if<LaguerreGauss>(&target->family)) {
        const double radius = target->waist * std::sqrt(2.0 * lg->p + std::abs(lg->l) + 1.0) / std::sqrt(2.0);
        ifg["winding_rad"] = phase_winding(d.sideband, radius);
      }
    }
    doc["interferogram"] = ifg;
  }
  out << doc.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct SqueezeArgs {
  double vin_db = 0.0;
  std::optional<double> eta;
  std::optional<double> vout_db;
  std::optional<double> vanti_db;
  std::size_t scan = 0;
  std::string csv = "scan.csv";
  double jitter_db = 0.0;
};

int squeeze_cmd(const SqueezeArgs& a, const Globals& g, std::ostream& out) {
  if (a.eta.has_value() == a.vout_db.has_value()) {
    throw ConfigError("give exactly one of --eta or --vout-db");
  }
  const double v_in = squeeze::db_to_var(a.vin_db);
  double eta = 0.0;
  if (a.eta) {
    eta = *a.eta;
    const double v_out = squeeze::propagate_loss(v_in, eta);
    out << "v_out = " << fixed(squeeze::var_to_db(v_out), 2) << " dB\n";
  } else {
    eta = squeeze::infer_eta(v_in, squeeze::db_to_var(*a.vout_db));
    out << "eta = " << fixed(eta, 3) << '\n';
  }
  if (a.scan > 0) {
    squeeze::SqueezeBudget budget{v_in, std::nullopt, eta};
    if (a.vanti_db) budget.v_anti = squeeze::db_to_var(*a.vanti_db);
    std::optional<squeeze::Jitter> jitter;
    if (a.jitter_db > 0.0) jitter = squeeze::Jitter{a.jitter_db, g.seed};
    const auto trace = squeeze::homodyne_scan(budget, squeeze::phase_grid(a.scan), jitter);
    fs::path path(a.csv);
    if (path.is_relative()) path = prepare_dir(g.out_dir) / path;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    squeeze::write_csv(trace, f);
    out << "wrote " << path.string() << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hologram synthesis and simulation for a cascaded phase-only SLM beam shaper"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for GS random initial phase and trace jitter");
  auto* out_dir_opt = app.add_option("--out-dir", g.out_dir, "Output directory");

  ModeRenderArgs mr;
  auto* cmd_mode = app.add_subcommand("mode-render", "Render a theoretical mode to CF64 + PGM");
  cmd_mode->add_option("--mode", mr.mode, "HG:m,n | LG:p,l | pattern:<file>")->required();
  cmd_mode->add_option("--waist", mr.waist, "Waist in meters");
  cmd_mode->add_option("--grid", mr.grid, "Samples per axis");
  cmd_mode->add_option("--extent", mr.extent, "Physical window width in meters");
  cmd_mode->add_option("--out", mr.out, "Output base name");

  std::string config_path;
  auto* cmd_synth = app.add_subcommand("synth", "Compute both holograms and simulate the output");
  cmd_synth->add_option("--config", config_path, "Run config JSON")->required();

  MetricsArgs ma;
  auto* cmd_metrics = app.add_subcommand("metrics", "Mode purity of a CF64 field");
  cmd_metrics->add_option("--field", ma.field, "Field to score (CF64)")->required();
  cmd_metrics->add_option("--target", ma.target, "Theoretical mode HG:m,n | LG:p,l | pattern:<file>");
  cmd_metrics->add_option("--reference", ma.reference, "Reference field (CF64) instead of --target");
  cmd_metrics->add_option("--waist", ma.waist, "Target waist in meters");
  cmd_metrics->add_option("--interferogram", ma.interferogram, "Write an interferogram PGM");
  cmd_metrics->add_option("--tilt", ma.tilt, "Reference carrier in cycles per meter");
  cmd_metrics->add_option("--reference-waist", ma.reference_waist, "Gaussian reference waist");
  cmd_metrics->add_option("--upsample", ma.upsample, "Band-limited upsampling before the interferogram");

  SqueezeArgs sa;
  auto* cmd_squeeze = app.add_subcommand("squeeze", "Loss propagation of quadrature squeezing");
  cmd_squeeze->add_option("--vin-db", sa.vin_db, "Input squeezing in dB relative to SNL")->required();
  cmd_squeeze->add_option("--eta", sa.eta, "Conversion efficiency");
  cmd_squeeze->add_option("--vout-db", sa.vout_db, "Measured output squeezing in dB");
  cmd_squeeze->add_option("--vanti-db", sa.vanti_db, "Input anti-squeezing in dB (default pure state)");
  cmd_squeeze->add_option("--scan", sa.scan, "Write an LO phase scan with N samples");
  cmd_squeeze->add_option("--csv", sa.csv, "Scan CSV file name");
  cmd_squeeze->add_option("--jitter-db", sa.jitter_db, "Gaussian jitter added to the scan (dB)");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("holoshape");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*cmd_mode) return mode_render(mr, g, out);
    if (*cmd_synth) return synth(config_path, g, out_dir_opt->count() > 0, out);
    if (*cmd_metrics) return metrics(ma, g, out);
    if (*cmd_squeeze) return squeeze_cmd(sa, g, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace holoshape::cli
