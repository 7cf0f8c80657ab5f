#include "polyfock/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "polyfock/errors.hpp"

namespace polyfock {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  return out;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin, const Schema& schema) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema.count(section)) fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail("key '" + key + "' appears before any [section]");
    if (key.empty()) fail("empty key");
    if (!schema.at(section).count(key)) fail("unknown key '" + key + "' in [" + section + "]");
    if (c.entries_.count({section, key})) fail("duplicate key '" + key + "' in [" + section + "]");
    if (value.empty()) fail("key '" + key + "' has an empty value");
    c.entries_[{section, key}] = {value, lineno};
  }
  return c;
}

Config Config::load(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path.string(), schema);
}

bool Config::has(const std::string& section, const std::string& key) const {
  return entries_.count({section, key}) != 0;
}

const Config::Entry& Config::entry(const std::string& section, const std::string& key) const {
  auto it = entries_.find({section, key});
  if (it == entries_.end()) {
    throw ConfigError(origin_ + ": missing required key '" + key + "' in [" + section + "]");
  }
  return it->second;
}

std::string Config::where(const std::string& section, const std::string& key) const {
  auto it = entries_.find({section, key});
  return origin_ + ":" + (it == entries_.end() ? std::string("?") : std::to_string(it->second.line));
}

std::string Config::string(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

std::string Config::string_or(const std::string& section, const std::string& key, const std::string& fallback) const {
  return has(section, key) ? string(section, key) : fallback;
}

double Config::real(const std::string& section, const std::string& key) const {
  const std::string& v = entry(section, key).value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(where(section, key) + ": key '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

double Config::real_or(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? real(section, key) : fallback;
}

long Config::integer(const std::string& section, const std::string& key) const {
  const std::string& v = entry(section, key).value;
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(where(section, key) + ": key '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

long Config::integer_or(const std::string& section, const std::string& key, long fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

std::uint64_t Config::u64_or(const std::string& section, const std::string& key, std::uint64_t fallback) const {
  return has(section, key) ? parse_u64(string(section, key), where(section, key)) : fallback;
}

std::vector<double> Config::reals_or(const std::string& section, const std::string& key,
                                     const std::vector<double>& fallback) const {
  if (!has(section, key)) return fallback;
  std::vector<double> out;
  for (const auto& cell : split_list(string(section, key))) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw ConfigError(where(section, key) + ": key '" + key + "' expects a list of numbers, got '" + cell + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> Config::strings(const std::string& section, const std::string& key) const {
  auto out = split_list(string(section, key));
  for (const auto& s : out) {
    if (s.empty()) throw ConfigError(where(section, key) + ": key '" + key + "' has an empty list item");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& text, const std::string& context) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(context + ": expected an unsigned 64-bit seed, got '" + text + "'");
  }
  return out;
}

const Config::Schema& config_schema() {
  static const Config::Schema schema{
      {"grid", {"time_half_width", "time_samples", "phase_half_width", "phase_samples"}},
      {"transform", {"input", "transform", "channels"}},
      {"frames", {"kind", "windows", "lattice", "radii", "probe_count", "margin", "quantity"}},
      {"sweep",
       {"n", "densities", "mode", "radii", "trials", "probe_count", "interpolation_radius", "interpolation_draws"}},
      {"mux", {"channels", "lattice", "radius", "noise_sigmas", "regularization", "max_order"}},
      {"run", {"seed", "out"}},
  };
  return schema;
}

}  // namespace polyfock
