#pragma once

#include <stdexcept>
#include <string>

namespace unlike {

// Every contract violation in the library surfaces as this type. The message
// is a single line so the CLI can print it verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace unlike
