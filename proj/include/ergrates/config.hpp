#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ergrates {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Settings of one run, keyed by name. Values are stored in canonical form
/// (text forms re-rendered, numbers in shortest round-trip notation), so
/// emit followed by parse reproduces the config exactly.
class RunConfig {
 public:
  /// Validates and canonicalizes; throws InvalidArgument on a bad value or
  /// an unknown key.
  void set(std::string_view key, std::string_view value);
  /// Stores the value only when the key is unset.
  void set_default(std::string_view key, std::string_view value);
  bool has(std::string_view key) const;
  /// Throws ConfigError when the key is unset.
  const std::string& get(std::string_view key) const;
  const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

  bool operator==(const RunConfig&) const = default;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

/// Keys accepted by RunConfig::set, in emit order.
const std::vector<std::string>& config_keys();

/// Line-oriented `key = value` text; `#` starts a comment. Every malformed
/// line is reported in one ConfigError, with its line number.
RunConfig parse_config(std::string_view text);

/// Canonical text, one `key = value` line per setting.
std::string emit_config(const RunConfig& config);

/// FNV-1a hash of the emitted config without output paths, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// Cross-field checks (dimensions of body, measure, action, directions...).
/// Returns every problem found.
std::vector<std::string> validate_config(const RunConfig& config);

/// Working dimension: the ellipsoid's, else `dim`, else 2.
std::size_t config_dimension(const RunConfig& config);

}  // namespace ergrates
