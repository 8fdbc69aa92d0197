#pragma once

#include <stdexcept>
#include <string>

namespace epirate {

// malformed configuration or arguments
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// unreadable or malformed data files
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace epirate
