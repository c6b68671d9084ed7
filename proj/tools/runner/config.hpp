#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace darkchain::runner {

/// Malformed or unknown configuration input; maps to exit status 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Flat, fully defaulted parameter set keyed "section.key".
class Config {
 public:
  /// Every accepted key with its global default.
  static const std::map<std::string, std::string>& known_keys();

  /// Global defaults, then `recipe_defaults`, then the INI file, then the
  /// "section.key=value" overrides, in that order.
  static Config resolve(const std::map<std::string, std::string>& recipe_defaults,
                        const std::optional<std::string>& ini_path, const std::vector<std::string>& overrides);

  void set(const std::string& key, const std::string& value);

  [[nodiscard]] const std::string& text(const std::string& key) const;
  [[nodiscard]] double real(const std::string& key) const;
  [[nodiscard]] int integer(const std::string& key) const;
  [[nodiscard]] std::uint64_t u64(const std::string& key) const;
  [[nodiscard]] bool flag(const std::string& key) const;
  [[nodiscard]] std::vector<double> reals(const std::string& key) const;
  [[nodiscard]] std::vector<int> integers(const std::string& key) const;

  /// Keys that describe the computation (everything but run.threads and
  /// output.path), sorted.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> echo() const;
  /// FNV-1a 64 over the echoed "key=value\n" lines.
  [[nodiscard]] std::uint64_t hash() const;

 private:
  std::map<std::string, std::string> values_;
};

[[nodiscard]] std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace darkchain::runner
