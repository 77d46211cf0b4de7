#pragma once

#include <stdexcept>
#include <string>

namespace ppmlr {

// Base for all solver errors; the CLI maps these to one-line "error: ..." output.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad axis/grid/partition/config input.
struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

struct OutOfRange : Error {
  explicit OutOfRange(const std::string& msg) : Error(msg) {}
};

// Negative density/pressure or non-positive internal energy, with cell identity.
struct UnphysicalState : Error {
  explicit UnphysicalState(const std::string& msg) : Error(msg) {}
};

// CFL violation detected as a crossing of moved Lagrangian interfaces.
struct StepRejected : Error {
  explicit StepRejected(const std::string& msg) : Error(msg) {}
};

}  // namespace ppmlr
