#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eonovm/config.hpp"

namespace eonovm {

/// Parse failure with the offending line (0 = not line-specific).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A parsed experiment description: base settings plus the sweep axes
/// (cross product, applied in file order).
struct ParsedConfig {
  SimConfig base;
  std::vector<std::pair<std::string, std::vector<std::string>>> sweeps;
};

/// Flat key=value text with an optional [sweep] section whose entries list
/// whitespace- or comma-separated values. '#' starts a comment.
ParsedConfig parse_config_file(const std::string& path);
ParsedConfig parse_config_text(const std::string& text);

/// Applies one key=value setting. Throws ConfigError on unknown keys or
/// unparsable values. Keys accept both spelled-out and short names
/// (n_onus/N, load/L, t_sw, d_max, t_rtt, ...).
void apply_setting(SimConfig& cfg, const std::string& key,
                   const std::string& value);

/// "2s", "0.5ms", "200us", "512ns" or a bare nanosecond count.
SimTime parse_duration_ns(const std::string& text);

/// "1Gbps", "100Mbps", "250kbps" or a bare bits-per-second count.
std::int64_t parse_rate_bps(const std::string& text);

}  // namespace eonovm
