#pragma once

#include <stdexcept>
#include <string>

namespace filament {

/// Base exception for every failure raised by the library. The message is the
/// short diagnostic a caller (or the CLI) reports verbatim.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace filament
