#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace holoshape {

enum class ErrorKind {
  GridMismatch,
  ZeroField,
  ImageLoad,
  HologramFormat,
  FieldFormat,
  Undersampled,
  NoCarrier,
  Domain,
  Degenerate,
  Config,
};

const char* to_string(ErrorKind kind);

// Base of every error the library throws. The kind lets front ends map errors
// onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define HOLOSHAPE_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(ErrorKind::Name, what) {} \
  };

HOLOSHAPE_DEFINE_ERROR(GridMismatch)
HOLOSHAPE_DEFINE_ERROR(ZeroField)
HOLOSHAPE_DEFINE_ERROR(ImageLoad)
HOLOSHAPE_DEFINE_ERROR(HologramFormat)
HOLOSHAPE_DEFINE_ERROR(FieldFormat)
HOLOSHAPE_DEFINE_ERROR(Undersampled)
HOLOSHAPE_DEFINE_ERROR(NoCarrier)
HOLOSHAPE_DEFINE_ERROR(Degenerate)

#undef HOLOSHAPE_DEFINE_ERROR

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

// Non-fatal diagnostics (under-sized grids, clamped estimates, ...). The
// default sink writes to stderr; tests install their own.
using WarningSink = std::function<void(const std::string&)>;
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace holoshape
