#pragma once

#include <stdexcept>
#include <string>

namespace dillon {

/// A computation refused because its size exceeds a configured gate.
class GateExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dillon
