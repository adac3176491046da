#ifndef ABRASIM_CONFIG_HPP
#define ABRASIM_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "abrasim/experiment.hpp"
#include "abrasim/scenario.hpp"

namespace abrasim {

// Scenario files are line-oriented `key = value` with [section] headers and
// '#' comments.  Sections: [scenario], [route], and optionally [sweep].
// Diagnostics carry the offending line number.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedConfig {
  Scenario scenario;
  std::optional<SweepSpec> sweep;  // present when the file has a [sweep] section
};

ParsedConfig parse_config_text(const std::string& text, const std::string& origin);
ParsedConfig parse_config_file(const std::string& path);

// Every tunable with its default, as a loadable config.
std::string default_config_text();

}  // namespace abrasim

#endif  // ABRASIM_CONFIG_HPP
