#pragma once

#include <stdexcept>
#include <string>

namespace nbz {

enum class Errc {
  invalid_argument,
  degenerate_range,
  overflow,
  corrupt,
  io,
  unsupported,
};

// Single exception type for the library; `code()` lets callers branch
// without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nbz
