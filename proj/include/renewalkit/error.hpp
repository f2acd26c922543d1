#pragma once

#include <stdexcept>
#include <string>

namespace renewalkit {

/// Base of every error raised by the toolkit. `name()` is the stable error
/// identifier surfaced by the CLI (e.g. "OutOfHorizon").
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define RENEWALKIT_DEFINE_ERROR(Type)                                      \
  class Type : public Error {                                              \
   public:                                                                 \
    explicit Type(const std::string& what) : Error(#Type, what) {}         \
  };

// Parameter and literal problems; reported by the CLI as validation errors.
RENEWALKIT_DEFINE_ERROR(InvalidParameter)
RENEWALKIT_DEFINE_ERROR(ParseError)
RENEWALKIT_DEFINE_ERROR(InvalidRole)
RENEWALKIT_DEFINE_ERROR(InvalidCosts)
RENEWALKIT_DEFINE_ERROR(ConfigError)

// Runtime failures.
RENEWALKIT_DEFINE_ERROR(OutOfHorizon)
RENEWALKIT_DEFINE_ERROR(DegenerateCycles)
RENEWALKIT_DEFINE_ERROR(Unstable)
RENEWALKIT_DEFINE_ERROR(NonConvergence)
RENEWALKIT_DEFINE_ERROR(EmptyTrace)

#undef RENEWALKIT_DEFINE_ERROR

}  // namespace renewalkit
