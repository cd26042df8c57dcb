#pragma once

#include <stdexcept>
#include <string>

namespace sls {

// An invalid scenario or topology parameter. The message names the field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sls
