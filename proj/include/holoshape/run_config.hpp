#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "holoshape/shaper.hpp"

namespace holoshape {

// JSON run document for `holoshape synth`. Unknown keys are rejected with a
// ConfigError naming the key. Relative pattern paths resolve against
// `base_dir`.
struct RunConfig {
  ShaperConfig shaper;
  std::filesystem::path output_dir = "out";
  bool render_intensity = true;
  bool seed_from_document = false;
};

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir,
                           std::uint64_t default_seed = 42);
RunConfig load_run_config(const std::filesystem::path& path, std::uint64_t default_seed = 42);

// Report document written as report.json; key order is fixed.
std::string report_json(const SynthesisReport& report, const ShaperConfig& config);

}  // namespace holoshape
