#include "holoshape/run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "holoshape/errors.hpp"
#include "json.hpp"

namespace holoshape {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) {
      throw ConfigError("unknown key '" + key + "'" + (where.empty() ? "" : " in " + where));
    }
  }
}

template <class T>
T get(const json& obj, const char* key, const std::string& where, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("key '" + std::string(key) + "' in " + where + " has the wrong type");
  }
}

ModeSpec parse_mode(const json& obj, const std::string& where, ModeSpec base,
                    const std::filesystem::path& base_dir) {
  check_keys(obj, where, {"mode", "waist", "smoothing"});
  try {
    if (obj.contains("mode")) base.family = parse_mode_family(get<std::string>(obj, "mode", where, ""));
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  base.waist = get<double>(obj, "waist", where, base.waist);
  if (auto* pat = std::get_if<Pattern>(&base.family)) {
    std::filesystem::path p(pat->path);
    if (p.is_relative()) pat->path = (base_dir / p).string();
    pat->smoothing = get<double>(obj, "smoothing", where, pat->smoothing);
  } else if (obj.contains("smoothing")) {
    throw ConfigError(where + ": 'smoothing' only applies to pattern modes");
  }
  return base;
}

SlmSpec parse_slm(const json& obj, const std::string& where, SlmSpec s) {
  check_keys(obj, where,
             {"nx", "ny", "pitch", "levels", "modulation_efficiency", "crosstalk_sigma"});
  s.nx = get<std::size_t>(obj, "nx", where, s.nx);
  s.ny = get<std::size_t>(obj, "ny", where, s.ny);
  s.pitch = get<double>(obj, "pitch", where, s.pitch);
  s.levels = get<int>(obj, "levels", where, s.levels);
  s.modulation_efficiency = get<double>(obj, "modulation_efficiency", where, s.modulation_efficiency);
  s.crosstalk_sigma = get<double>(obj, "crosstalk_sigma", where, s.crosstalk_sigma);
  return s;
}

std::optional<Aperture> parse_aperture(const json& obj, const std::string& where) {
  if (obj.is_null()) return std::nullopt;
  check_keys(obj, where, {"radius", "half_width", "half_height"});
  if (obj.contains("radius")) {
    if (obj.contains("half_width") || obj.contains("half_height")) {
      throw ConfigError(where + ": give either radius or half_width/half_height");
    }
    const double r = get<double>(obj, "radius", where, 0.0);
    if (!(r > 0.0)) throw ConfigError(where + ": radius must be positive");
    return Aperture::circular(r);
  }
  const double hw = get<double>(obj, "half_width", where, 0.0);
  const double hh = get<double>(obj, "half_height", where, 0.0);
  if (!(hw > 0.0) || !(hh > 0.0)) throw ConfigError(where + ": half sizes must be positive");
  return Aperture::rectangular(hw, hh);
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir,
                           std::uint64_t default_seed) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc, "",
             {"preset", "iterations", "initial_phase", "focal_length", "wavelength", "grid", "input",
              "target", "quantize", "slm1", "slm2", "plane2_aperture", "target_aperture",
              "output_dir", "render"});

  RunConfig rc;
  ModeSpec target = ModeSpec::hg(1, 0, kDefaultTargetWaist);
  if (doc.contains("target")) target = parse_mode(doc["target"], "target", target, base_dir);
  const std::string preset = get<std::string>(doc, "preset", "config", "ideal");
  if (preset == "ideal") {
    rc.shaper = ShaperConfig::ideal(target);
  } else if (preset == "realistic") {
    rc.shaper = ShaperConfig::realistic(target);
  } else {
    throw ConfigError("preset must be 'ideal' or 'realistic'");
  }
  ShaperConfig& c = rc.shaper;

  c.iterations = get<int>(doc, "iterations", "config", c.iterations);
  c.initial_phase.seed = default_seed;
  if (doc.contains("initial_phase")) {
    const json& ip = doc["initial_phase"];
    check_keys(ip, "initial_phase", {"kind", "seed", "curvature"});
    const std::string kind = get<std::string>(ip, "kind", "initial_phase", "matched");
    if (kind == "zeros") {
      c.initial_phase.kind = InitialPhase::Kind::Zeros;
    } else if (kind == "random") {
      c.initial_phase.kind = InitialPhase::Kind::SeededRandom;
    } else if (kind == "quadratic") {
      c.initial_phase.kind = InitialPhase::Kind::Quadratic;
    } else if (kind == "matched") {
      c.initial_phase.kind = InitialPhase::Kind::Matched;
    } else {
      throw ConfigError("initial_phase.kind must be matched, zeros, random or quadratic");
    }
    if (ip.contains("seed")) {
      c.initial_phase.seed = get<std::uint64_t>(ip, "seed", "initial_phase", default_seed);
      rc.seed_from_document = true;
    }
    c.initial_phase.curvature = get<double>(ip, "curvature", "initial_phase", 0.0);
  }
  c.lens.focal_length = get<double>(doc, "focal_length", "config", c.lens.focal_length);
  const double wl = get<double>(doc, "wavelength", "config", c.input.wavelength);
  if (doc.contains("grid")) {
    check_keys(doc["grid"], "grid", {"size", "pitch"});
    c.grid_size = get<std::size_t>(doc["grid"], "size", "grid", c.grid_size);
    c.grid_pitch = get<double>(doc["grid"], "pitch", "grid", c.grid_pitch);
  }
  if (doc.contains("input")) c.input = parse_mode(doc["input"], "input", c.input, base_dir);
  c.input.wavelength = wl;
  c.target.wavelength = wl;
  c.quantize = get<bool>(doc, "quantize", "config", c.quantize);
  if (doc.contains("slm1")) c.slm1 = parse_slm(doc["slm1"], "slm1", c.slm1);
  if (doc.contains("slm2")) c.slm2 = parse_slm(doc["slm2"], "slm2", c.slm2);
  if (preset == "realistic") c.plane2_aperture = realistic_stop(c);
  if (doc.contains("plane2_aperture")) c.plane2_aperture = parse_aperture(doc["plane2_aperture"], "plane2_aperture");
  if (doc.contains("target_aperture")) c.target_aperture = parse_aperture(doc["target_aperture"], "target_aperture");
  if (doc.contains("output_dir")) rc.output_dir = get<std::string>(doc, "output_dir", "config", "out");
  if (doc.contains("render")) {
    check_keys(doc["render"], "render", {"intensity"});
    rc.render_intensity = get<bool>(doc["render"], "intensity", "render", true);
  }
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path, std::uint64_t default_seed) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.parent_path(), default_seed);
}

std::string report_json(const SynthesisReport& r, const ShaperConfig& c) {
  ojson doc;
  doc["target"] = describe(c.target);
  doc["input"] = describe(c.input);
  doc["iterations"] = c.iterations;
  doc["seed"] = c.initial_phase.seed;
  const PlaneGrids g = plane_grids(c);
  doc["grid"] = {{"size", c.grid_size}, {"slm1_pitch", g.slm1.dx()}, {"slm2_pitch", g.slm2.dx()}};
  doc["purity"] = r.purity;
  doc["visibility"] = r.visibility;
  doc["conversion_efficiency"] = r.conversion_efficiency;
  doc["input_power"] = r.input_power;
  doc["output_power"] = r.output_power;
  doc["gs_error_trace"] = r.gs_error_trace;
  return doc.dump(2) + "\n";
}

}  // namespace holoshape
