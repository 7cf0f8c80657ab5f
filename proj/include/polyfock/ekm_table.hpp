#pragma once

#include <filesystem>
#include <map>
#include <utility>
#include <vector>

#include "polyfock/grid.hpp"

namespace polyfock {

/// One term c * z^i * conj(z)^j of a closed-form e_{k,m}.
struct EkmTerm {
  int i = 0;
  int j = 0;
  cplx coefficient;
};

/// Frozen polynomial tables for e_{k,m}, read from `ekm_coeffs.csv`.
class EkmTable {
 public:
  static EkmTable load(const std::filesystem::path& path);

  int max_k() const { return max_k_; }
  int max_m() const { return max_m_; }
  bool contains(int k, int m) const { return terms_.count({k, m}) != 0; }

  /// Throws CapabilityError when (k, m) is outside the table.
  const std::vector<EkmTerm>& terms(int k, int m) const;
  cplx evaluate(int k, int m, cplx z) const;

  const std::filesystem::path& source() const { return source_; }

 private:
  std::map<std::pair<int, int>, std::vector<EkmTerm>> terms_;
  int max_k_ = -1;
  int max_m_ = -1;
  std::filesystem::path source_;
};

/// Path of the shipped table; POLYFOCK_EKM_TABLE in the environment overrides it.
std::filesystem::path default_ekm_table_path();

/// Table loaded once from default_ekm_table_path().
const EkmTable& default_ekm_table();

}  // namespace polyfock
