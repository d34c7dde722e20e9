#pragma once

#include <stdexcept>
#include <string>

namespace ajam {

// Raised when a configuration value violates its contract. `field` is the
// dotted path of the offending key (e.g. "env.n_channels", "patterns[2]").
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ajam
