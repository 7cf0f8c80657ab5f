#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyfock/bargmann.hpp"
#include "polyfock/config.hpp"
#include "polyfock/csv_io.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/frames.hpp"
#include "polyfock/gabor.hpp"
#include "polyfock/lattice.hpp"
#include "polyfock/multiplex.hpp"
#include "polyfock/nyquist.hpp"
#include "polyfock/verify.hpp"
#include "polyfock/window.hpp"

namespace fs = std::filesystem;
using namespace polyfock;

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct Run {
  Config config;
  std::uint64_t seed = 1;
  fs::path out;
};

Config empty_config() { return Config::parse("", "<none>", config_schema()); }

Run resolve(const Common& c) {
  Run r{c.config_path.empty() ? empty_config() : Config::load(c.config_path, config_schema()), 1, "out"};
  r.seed = c.seed ? *c.seed : r.config.u64_or("run", "seed", 1);
  r.out = !c.out.empty() ? fs::path(c.out) : fs::path(r.config.string_or("run", "out", "out"));
  fs::create_directories(r.out);
  return r;
}

void emit(const fs::path& path, const std::string& text) {
  write_file_atomic(path, text);
  std::cout << "wrote " << path.string() << "\n";
}

std::vector<double> radii_from(const Config& cfg, const std::string& section) {
  return cfg.reals_or(section, "radii", default_radii());
}

std::optional<TimeGrid> configured_time_grid(const Config& cfg) {
  if (!cfg.has("grid", "time_half_width") && !cfg.has("grid", "time_samples")) return std::nullopt;
  const long n = cfg.integer("grid", "time_samples");
  if (n <= 0) throw ConfigError(cfg.where("grid", "time_samples") + ": time_samples must be positive");
  return TimeGrid(cfg.real("grid", "time_half_width"), static_cast<std::size_t>(n));
}

PhaseGrid configured_phase_grid(const Config& cfg) {
  const PhaseGrid d = default_phase_grid();
  const double w = cfg.real_or("grid", "phase_half_width", d.x_half_width());
  const long n = cfg.integer_or("grid", "phase_samples", static_cast<long>(d.nx()));
  if (n <= 0) throw ConfigError(cfg.where("grid", "phase_samples") + ": phase_samples must be positive");
  return PhaseGrid(w, w, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
}

Signal input_signal(const std::string& spec, const TimeGrid& grid) {
  if (spec.rfind("csv:", 0) == 0) return read_signal_csv(spec.substr(4));
  return Window::parse(spec).on(grid);
}

int cmd_transform(const Common& common) {
  const Run run = resolve(common);
  const Config& cfg = run.config;
  const std::string transform = cfg.string("transform", "transform");
  const TimeGrid grid = configured_time_grid(cfg).value_or(default_time_grid());
  const PhaseGrid phase = configured_phase_grid(cfg);
  auto aligned = [&](const TimeGrid& time) {
    if (stft_snap_residual(time, phase) > 1e-12) {
      throw ConfigError("phase grid x nodes must fall on the time grid (step " + format_double(time.step()) + ")");
    }
  };
  std::optional<FockField> field;
  if (transform == "poly") {
    std::vector<Signal> channels;
    for (const auto& spec : cfg.strings("transform", "channels")) channels.push_back(input_signal(spec, grid));
    const VectorSignal f(channels);
    aligned(f.grid());
    field = poly_bargmann(f, phase);
  } else {
    const Signal f = input_signal(cfg.string("transform", "input"), grid);
    aligned(f.grid());
    if (transform == "bargmann") {
      field = bargmann_transform(f, phase);
    } else if (transform.rfind("true_poly:", 0) == 0) {
      const std::string arg = transform.substr(10);
      std::size_t used = 0;
      int n = -1;
      try {
        n = std::stoi(arg, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != arg.size() || n < 0) {
        throw ConfigError(cfg.where("transform", "transform") + ": bad order in '" + transform + "'");
      }
      field = true_poly_bargmann(f, n, phase);
    } else {
      throw ConfigError(cfg.where("transform", "transform") + ": unknown transform '" + transform +
                        "' (expected bargmann, true_poly:<n>, poly)");
    }
  }
  emit(run.out / "transform.csv", fock_field_to_csv(*field));
  return 0;
}

int cmd_frame_bounds(const Common& common) {
  const Run run = resolve(common);
  const Config& cfg = run.config;
  GaborSystemSpec spec;
  spec.kind = parse_system_kind(cfg.string_or("frames", "kind", "super"));
  for (const auto& w : cfg.strings("frames", "windows")) spec.windows.push_back(Window::parse(w));
  spec.lattice = parse_lattice(cfg.string("frames", "lattice"));
  const auto radii = radii_from(cfg, "frames");
  const long probes = cfg.integer_or("frames", "probe_count", 32);
  if (probes <= 0) throw ConfigError(cfg.where("frames", "probe_count") + ": probe_count must be positive");
  const double margin = cfg.real_or("frames", "margin", kDefaultProbeMargin);
  const std::string quantity = cfg.string_or("frames", "quantity", "frame");
  const TimeGrid grid = configured_time_grid(cfg).value_or(working_grid(radii));
  BoundsReport report;
  if (quantity == "frame") {
    report = estimate_frame_bounds(spec, radii, grid, static_cast<std::size_t>(probes), run.seed, margin);
  } else if (quantity == "riesz") {
    report = estimate_riesz_bounds(spec, radii, grid);
    report.seed = run.seed;
  } else {
    throw ConfigError(cfg.where("frames", "quantity") + ": quantity must be frame or riesz");
  }
  emit(run.out / "bounds.json", report.to_json());
  emit(run.out / "bounds.csv", report.to_csv());
  std::cout << "verdict " << verdict_name(report.verdict) << "\n";
  return 0;
}

int cmd_sweep(const Common& common) {
  const Run run = resolve(common);
  const Config& cfg = run.config;
  const long n = cfg.integer("sweep", "n");
  if (n < 1) throw ConfigError(cfg.where("sweep", "n") + ": n must be at least 1");
  std::vector<double> densities = cfg.reals_or("sweep", "densities", {});
  if (densities.empty()) throw ConfigError("missing required key [sweep] densities");
  if (const std::size_t dropped = dedupe_densities(densities)) {
    std::cerr << "warning: dropped " << dropped << " duplicate densit" << (dropped == 1 ? "y" : "ies") << "\n";
  }
  SweepConfig sc;
  sc.radii = radii_from(cfg, "sweep");
  sc.trials = static_cast<std::size_t>(cfg.integer_or("sweep", "trials", static_cast<long>(sc.trials)));
  sc.probe_count = static_cast<std::size_t>(cfg.integer_or("sweep", "probe_count", static_cast<long>(sc.probe_count)));
  sc.interpolation_draws =
      static_cast<std::size_t>(cfg.integer_or("sweep", "interpolation_draws", static_cast<long>(sc.interpolation_draws)));
  sc.interpolation_radius = cfg.real_or("sweep", "interpolation_radius", sc.interpolation_radius);
  sc.seed = run.seed;
  const std::string mode = cfg.string("sweep", "mode");
  const auto rows = mode == "conjecture" ? true_space_scan(static_cast<int>(n), densities, sc)
                                         : density_sweep(static_cast<int>(n), densities, parse_sweep_mode(mode), sc);
  emit(run.out / "sweep.csv", sweep_rows_to_csv(rows));
  return 0;
}

int cmd_mux(const Common& common) {
  const Run run = resolve(common);
  const Config& cfg = run.config;
  const long channels = cfg.integer("mux", "channels");
  if (channels < 1) throw ParameterError(cfg.where("mux", "channels") + ": multiplexing needs at least one channel");
  const Lattice2D lattice = parse_lattice(cfg.string("mux", "lattice"));
  const double radius = cfg.real_or("mux", "radius", kDefaultMuxRadius);
  const auto sigmas = cfg.reals_or("mux", "noise_sigmas", {0.0, 1e-4, 1e-3, 1e-2});
  const double reg = cfg.real_or("mux", "regularization", kDefaultMuxRegularization);
  const long max_order = cfg.integer_or("mux", "max_order", 8);
  const TimeGrid grid = working_grid({radius});
  const VectorSignal signals = demo_channels(static_cast<std::size_t>(channels), grid, static_cast<int>(max_order), run.seed);
  emit(run.out / "stream.csv", mux_stream_to_csv(mux_encode(signals, lattice, radius)));
  const MuxReport report = mux_report(signals, lattice, radius, sigmas, run.seed, reg);
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    emit(run.out / ("snr_" + std::to_string(i) + ".csv"), report.snr_csv(i));
  }
  emit(run.out / "mux_summary.json", report.to_json());
  if (report.ill_conditioned) std::cerr << "warning: decoder is ill-conditioned on this lattice\n";
  return 0;
}

int cmd_verify(const Common& common, const std::string& suite, const std::string& ekm_table) {
  const Run run = resolve(common);
  VerifyOptions options;
  options.suite = suite;
  options.seed = run.seed;
  if (!ekm_table.empty()) options.ekm_table = ekm_table;
  const VerifyReport report = run_verify(options, [](const CheckResult& c) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << std::endl;
  });
  emit(run.out / "verify_report.json", report.to_json());
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyanalytic Fock space and vector-valued Gabor toolkit"};
  app.require_subcommand(1);
  Common common;
  std::string seed_text;
  std::string suite = "fast";
  std::string ekm_table;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", common.config_path, "experiment config file");
    if (config_required) opt->required();
    sub->add_option("--seed", seed_text, "64-bit seed (overrides [run] seed)");
    sub->add_option("--out", common.out, "output directory (overrides [run] out)");
  };
  auto* transform = app.add_subcommand("transform", "Bargmann-type transform of a signal");
  auto* bounds = app.add_subcommand("frame-bounds", "frame or Riesz bound estimates");
  auto* sweep = app.add_subcommand("sweep", "density sweep across the Nyquist threshold");
  auto* mux = app.add_subcommand("mux", "multiplex round trip with noise");
  auto* verify = app.add_subcommand("verify", "built-in verification suite");
  add_common(transform, true);
  add_common(bounds, true);
  add_common(sweep, true);
  add_common(mux, true);
  add_common(verify, false);
  verify->add_option("--suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--ekm-table", ekm_table, "coefficient table for the true polyanalytic basis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!seed_text.empty()) common.seed = parse_u64(seed_text, "--seed");
    if (transform->parsed()) return cmd_transform(common);
    if (bounds->parsed()) return cmd_frame_bounds(common);
    if (sweep->parsed()) return cmd_sweep(common);
    if (mux->parsed()) return cmd_mux(common);
    return cmd_verify(common, suite, ekm_table);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const ShapeError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
