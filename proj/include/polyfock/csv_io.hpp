#pragma once

#include <filesystem>
#include <string>

#include "polyfock/grid.hpp"

namespace polyfock {

/// Reads a signal from CSV with header `t,re,im`; the time grid is inferred from the
/// node column, which must be uniform and of the form -T + j * 2T/N.
Signal read_signal_csv(const std::filesystem::path& path);

std::string signal_to_csv(const Signal& s);

/// `x,omega,re,im`, one row per phase node, omega fastest. Lines in `preamble` are
/// emitted first, each prefixed with "# ".
std::string grid_field_to_csv(const GridField& field, const std::vector<std::string>& preamble = {});

/// Writes through a temporary file in the same directory followed by a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Shortest round-trip decimal representation, used by every emitter for stable bytes.
std::string format_double(double v);

}  // namespace polyfock
