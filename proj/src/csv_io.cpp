#include "polyfock/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "polyfock/errors.hpp"

namespace polyfock {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::filesystem::path& path, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": not a number: '" + text + "'");
  }
}

}  // namespace

Signal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open signal file " + path.string());
  std::string line;
  int lineno = 0;
  bool header = false;
  std::vector<double> t;
  std::vector<cplx> v;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto cols = split(line, ',');
    for (auto& c : cols) c = trim(c);
    if (!header) {
      if (cols != std::vector<std::string>{"t", "re", "im"}) {
        throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                          ": expected header 't,re,im'");
      }
      header = true;
      continue;
    }
    if (cols.size() != 3) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 3 columns");
    }
    t.push_back(parse_number(cols[0], path, lineno));
    v.emplace_back(parse_number(cols[1], path, lineno), parse_number(cols[2], path, lineno));
  }
  if (!header) throw ConfigError(path.string() + ": missing header 't,re,im'");
  if (t.size() < 2) throw ConfigError(path.string() + ": need at least two samples");
  const double step = t[1] - t[0];
  const double half = -t[0];
  const auto n = t.size();
  if (!(step > 0.0) || std::abs(half - 0.5 * step * static_cast<double>(n)) > 1e-9 * (1.0 + half)) {
    throw ConfigError(path.string() + ": nodes must be -T + j*2T/N");
  }
  const TimeGrid grid(half, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(t[j] - grid.node(j)) > 1e-9 * (1.0 + half)) {
      throw ConfigError(path.string() + ": non-uniform node at row " + std::to_string(j + 1));
    }
  }
  Eigen::VectorXcd values(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) values[static_cast<Eigen::Index>(j)] = v[j];
  return Signal(grid, std::move(values));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string signal_to_csv(const Signal& s) {
  std::string out = "t,re,im\n";
  for (std::size_t j = 0; j < s.grid().size(); ++j) {
    out += format_double(s.grid().node(j)) + "," + format_double(s[j].real()) + "," +
           format_double(s[j].imag()) + "\n";
  }
  return out;
}

std::string grid_field_to_csv(const GridField& field, const std::vector<std::string>& preamble) {
  std::string out;
  for (const auto& p : preamble) out += "# " + p + "\n";
  out += "x,omega,re,im\n";
  const auto& g = field.grid();
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t k = 0; k < g.nomega(); ++k) {
      const cplx v = field.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      out += format_double(g.x_node(i)) + "," + format_double(g.omega_node(k)) + "," +
             format_double(v.real()) + "," + format_double(v.imag()) + "\n";
    }
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error("short write on " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace polyfock
