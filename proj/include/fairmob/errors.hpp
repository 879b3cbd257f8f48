#pragma once

#include <stdexcept>
#include <string>

namespace fairmob {

// Invalid user-supplied configuration (config file, flags, city tables).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A metric that cannot be computed from the supplied data.
class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments to a library call; programmer error rather than bad config.
using ArgumentError = std::invalid_argument;

}  // namespace fairmob
