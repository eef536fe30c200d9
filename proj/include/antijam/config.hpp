#pragma once

// JSON experiment configuration (schema version 1).

#include <stdexcept>
#include <string>

#include "antijam/harness.hpp"

namespace antijam {

inline constexpr int kConfigVersion = 1;

/// Config problem located at a 1-based line of the source text (0 = unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& msg);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses a config. `source` names the text in diagnostics; relative table
/// paths resolve against its directory. Pass validate = false when command-line
/// overrides are applied afterwards.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>",
                              bool validate = true);
ExperimentConfig load_config(const std::string& path, bool validate = true);

}  // namespace antijam
