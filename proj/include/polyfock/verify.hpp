#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "polyfock/ekm_table.hpp"

namespace polyfock {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::string note;

  double metric(const std::string& key) const;
};

/// Individual invariant checks; each returns a failed result (with the error text in
/// `note`) instead of throwing.
CheckResult check_hermite_orthonormality(int max_order = 8);
CheckResult check_stft_paths(std::size_t pairs, std::uint64_t seed);
CheckResult check_stft_isometry(std::size_t pairs, std::uint64_t seed);
CheckResult check_bargmann_basis(const EkmTable& table);
CheckResult check_ekm_gram(const EkmTable& table);
CheckResult check_polyanalytic_ladder(std::size_t signals, std::uint64_t seed);
CheckResult check_isometries(std::uint64_t seed);
CheckResult check_s0_norm();
CheckResult check_lattice_algebra(std::uint64_t seed);
CheckResult check_gram_consistency(std::uint64_t seed);
CheckResult check_route_equivalence(std::size_t signals, std::uint64_t seed);
CheckResult check_decomposition(const EkmTable& table);
/// Four modes at densities n -/+ 0.5 give opposite verdicts in the expected direction.
CheckResult check_nyquist_bracketing(int n, std::uint64_t seed);
/// Super-frame on Lambda vs union-Riesz on the adjoint, multiframe on the adjoint vs
/// vector-Riesz on Lambda, at densities n -/+ 0.5.
CheckResult check_duality(int n, std::uint64_t seed);
CheckResult check_multiplex(std::uint64_t seed);

struct VerifyOptions {
  std::string suite = "fast";  ///< fast | full
  std::uint64_t seed = 1;
  std::filesystem::path ekm_table = default_ekm_table_path();
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Machine-readable report; contains no timings so equal seeds give equal bytes.
  std::string to_json() const;
};

/// Runs the suite, calling `progress` after each check when given.
VerifyReport run_verify(const VerifyOptions& options, void (*progress)(const CheckResult&) = nullptr);

}  // namespace polyfock
