#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace polyfock {

/// Flat `key = value` text grouped by `[section]` headers; `#` and `;` start comments.
/// Every key must appear in the schema, otherwise parsing fails with its line number.
class Config {
 public:
  using Schema = std::map<std::string, std::set<std::string>>;

  static Config parse(const std::string& text, const std::string& origin, const Schema& schema);
  static Config load(const std::filesystem::path& path, const Schema& schema);

  bool has(const std::string& section, const std::string& key) const;

  /// Required accessors throw ConfigError naming the key when it is absent.
  std::string string(const std::string& section, const std::string& key) const;
  std::string string_or(const std::string& section, const std::string& key, const std::string& fallback) const;
  double real(const std::string& section, const std::string& key) const;
  double real_or(const std::string& section, const std::string& key, double fallback) const;
  long integer(const std::string& section, const std::string& key) const;
  long integer_or(const std::string& section, const std::string& key, long fallback) const;
  std::uint64_t u64_or(const std::string& section, const std::string& key, std::uint64_t fallback) const;
  std::vector<double> reals_or(const std::string& section, const std::string& key,
                               const std::vector<double>& fallback) const;
  std::vector<std::string> strings(const std::string& section, const std::string& key) const;

  /// "origin:line" of a key, for messages about its value.
  std::string where(const std::string& section, const std::string& key) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry& entry(const std::string& section, const std::string& key) const;

  std::string origin_;
  std::map<std::pair<std::string, std::string>, Entry> entries_;
};

/// Schema shared by every subcommand (documented in docs/config_schema.md).
const Config::Schema& config_schema();

/// Parses a u64 written in decimal; ConfigError on anything else.
std::uint64_t parse_u64(const std::string& text, const std::string& context);

}  // namespace polyfock
