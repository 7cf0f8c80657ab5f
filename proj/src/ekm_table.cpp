#include "polyfock/ekm_table.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "polyfock/errors.hpp"

#ifndef POLYFOCK_ASSET_DIR
#define POLYFOCK_ASSET_DIR "assets"
#endif

namespace polyfock {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, int line, const std::string& what) {
  std::ostringstream msg;
  msg << path.string() << ":" << line << ": " << what;
  throw ConfigError(msg.str());
}

}  // namespace

EkmTable EkmTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open e_{k,m} table " + path.string());
  EkmTable table;
  table.source_ = path;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "k,m,i,j,re,im") fail(path, lineno, "expected header k,m,i,j,re,im");
      header = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) fail(path, lineno, "expected 6 columns");
    try {
      std::size_t used = 0;
      auto as_int = [&](const std::string& s) {
        const int v = std::stoi(s, &used);
        if (used != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
      };
      auto as_real = [&](const std::string& s) {
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      const int k = as_int(cells[0]);
      const int m = as_int(cells[1]);
      EkmTerm term{as_int(cells[2]), as_int(cells[3]), cplx(as_real(cells[4]), as_real(cells[5]))};
      table.terms_[{k, m}].push_back(term);
      table.max_k_ = std::max(table.max_k_, k);
      table.max_m_ = std::max(table.max_m_, m);
    } catch (const std::logic_error&) {
      fail(path, lineno, "malformed number");
    }
  }
  if (!header) fail(path, lineno, "missing header");
  return table;
}

const std::vector<EkmTerm>& EkmTable::terms(int k, int m) const {
  auto it = terms_.find({k, m});
  if (it == terms_.end()) {
    std::ostringstream msg;
    msg << "e_{" << k << "," << m << "} is not in the coefficient table (k <= " << max_k_
        << ", m <= " << max_m_ << ")";
    throw CapabilityError(msg.str());
  }
  return it->second;
}

cplx EkmTable::evaluate(int k, int m, cplx z) const {
  cplx acc = 0.0;
  const cplx zb = std::conj(z);
  for (const auto& t : terms(k, m)) {
    cplx p = t.coefficient;
    for (int a = 0; a < t.i; ++a) p *= z;
    for (int b = 0; b < t.j; ++b) p *= zb;
    acc += p;
  }
  return acc;
}

std::filesystem::path default_ekm_table_path() {
  if (const char* env = std::getenv("POLYFOCK_EKM_TABLE"); env && *env) return env;
  return std::filesystem::path(POLYFOCK_ASSET_DIR) / "ekm_coeffs.csv";
}

const EkmTable& default_ekm_table() {
  static const EkmTable table = EkmTable::load(default_ekm_table_path());
  return table;
}

}  // namespace polyfock
