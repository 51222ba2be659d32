#include "holoshape/errors.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace holoshape {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::ZeroField: return "ZeroField";
    case ErrorKind::ImageLoad: return "ImageLoad";
    case ErrorKind::HologramFormat: return "HologramFormat";
    case ErrorKind::FieldFormat: return "FieldFormat";
    case ErrorKind::Undersampled: return "Undersampled";
    case ErrorKind::NoCarrier: return "NoCarrier";
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

namespace {
std::mutex sink_mutex;
WarningSink& sink() {
  static WarningSink s = [](const std::string& m) { std::cerr << "warning: " << m << '\n'; };
  return s;
}
}  // namespace

void set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex);
  sink() = s ? std::move(s) : [](const std::string&) {};
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex);
  sink()(message);
}

}  // namespace holoshape
