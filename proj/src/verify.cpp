#include "polyfock/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include <json.hpp>

#include "polyfock/bargmann.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/frames.hpp"
#include "polyfock/gabor.hpp"
#include "polyfock/hermite.hpp"
#include "polyfock/lattice.hpp"
#include "polyfock/multiplex.hpp"
#include "polyfock/nyquist.hpp"
#include "polyfock/random.hpp"

namespace polyfock {

namespace {

using Idx = Eigen::Index;

CheckResult guarded(const std::string& name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.name = name;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.note = e.what();
  }
  return r;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double max_abs_on_mask(const FockField& f, const NodeMask& mask) {
  double worst = 0.0;
  for (Idx k = 0; k < mask.cols(); ++k) {
    for (Idx i = 0; i < mask.rows(); ++i) {
      if (mask(i, k)) worst = std::max(worst, std::abs(f.values()(i, k)));
    }
  }
  return worst;
}

double max_abs_on_disk(const FockField& f, double radius) {
  double worst = 0.0;
  const auto& g = f.grid();
  for (std::size_t k = 0; k < g.nomega(); ++k) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      if (std::abs(g.z(i, k)) <= radius) worst = std::max(worst, std::abs(f.values()(static_cast<Idx>(i), static_cast<Idx>(k))));
    }
  }
  return worst;
}

Verdict expected(bool above_threshold, bool stable_above) {
  return above_threshold == stable_above ? Verdict::stable_positive : Verdict::decaying;
}

}  // namespace

double CheckResult::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  throw Error("check '" + name + "' has no metric '" + key + "'");
}

CheckResult check_hermite_orthonormality(int max_order) {
  return guarded("hermite_orthonormality", [&](CheckResult& r) {
    const TimeGrid grid = default_time_grid();
    const Eigen::VectorXd t = grid.nodes();
    const Eigen::MatrixXd h = hermite_table(max_order, std::span<const double>(t.data(), static_cast<std::size_t>(t.size())));
    const Eigen::MatrixXd g = h * h.transpose() * grid.step();
    const double dev = (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    // Node t_j pairs with t_{N-j}; parity must hold exactly.
    double parity = 0.0;
    for (int n = 0; n <= max_order; ++n) {
      for (std::size_t j = 1; j < grid.size(); ++j) {
        const double sign = n % 2 ? -1.0 : 1.0;
        parity = std::max(parity, std::abs(h(n, static_cast<Idx>(j)) - sign * h(n, static_cast<Idx>(grid.size() - j))));
      }
    }
    r.metrics = {{"max_gram_deviation", dev}, {"max_parity_defect", parity}};
    r.passed = dev < 1e-8 && parity == 0.0;
  });
}

CheckResult check_stft_paths(std::size_t pairs, std::uint64_t seed) {
  return guarded("stft_fft_vs_direct", [&](CheckResult& r) {
    const TimeGrid grid = default_time_grid();
    const PhaseGrid phase(6.0, 6.0, 64, 64);
    auto rng = stream(seed, "stft-paths");
    double worst = 0.0;
    double worst_ref = 0.0;
    for (std::size_t p = 0; p < pairs; ++p) {
      const Signal f = random_hermite_signal(grid, 8, rng);
      const Signal g = random_hermite_signal(grid, 8, rng);
      const GridField a = stft(f, g, phase, StftMethod::fft);
      const GridField b = stft(f, g, phase, StftMethod::direct);
      worst = std::max(worst, (a.values() - b.values()).cwiseAbs().maxCoeff());
      if (p < 2) {
        const GridField c = stft(f, g, phase, StftMethod::reference);
        worst_ref = std::max(worst_ref, (a.values() - c.values()).cwiseAbs().maxCoeff());
      }
    }
    r.metrics = {{"max_fft_direct_gap", worst}, {"max_fft_reference_gap", worst_ref}};
    r.passed = worst < 1e-10 && worst_ref < 1e-10;
  });
}

CheckResult check_stft_isometry(std::size_t pairs, std::uint64_t seed) {
  return guarded("stft_isometry_orthogonality", [&](CheckResult& r) {
    const TimeGrid grid = default_time_grid();
    const PhaseGrid phase = default_phase_grid();
    auto rng = stream(seed, "stft-isometry");
    double iso = 0.0;
    double orth = 0.0;
    for (std::size_t p = 0; p < pairs; ++p) {
      const Signal f = random_hermite_signal(grid, 8, rng);
      const Signal g = random_hermite_signal(grid, 8, rng);
      const double lhs = std::sqrt(phase_quadrature(stft(f, g, phase), PhaseWeight::none));
      iso = std::max(iso, relative_gap(lhs, f.norm() * g.norm()));
      const Signal f2 = random_hermite_signal(grid, 8, rng);
      const Signal g2 = random_hermite_signal(grid, 8, rng);
      const auto o = verify_orthogonality_relations(f, f2, g, g2, phase);
      orth = std::max(orth, std::abs(o.lhs - o.rhs) / (f.norm() * f2.norm() * g.norm() * g2.norm()));
    }
    double hermite_iso = 0.0;
    for (int n = 0; n <= 5; ++n) {
      const Signal f = random_hermite_signal(grid, 8, rng);
      const double lhs = std::sqrt(phase_quadrature(stft(f, hermite_function(n, grid), phase), PhaseWeight::none));
      hermite_iso = std::max(hermite_iso, relative_gap(lhs, f.norm()));
    }
    const auto ow = verify_orthogonality_relations(gaussian_window(grid), gaussian_window(grid), hermite_function(0, grid),
                                                   hermite_function(1, grid), phase);
    r.metrics = {{"max_isometry_error", iso},
                 {"max_orthogonality_error", orth},
                 {"max_hermite_window_isometry_error", hermite_iso},
                 {"orthogonal_windows_lhs", std::abs(ow.lhs)}};
    r.passed = iso < 1e-5 && orth < 1e-5 && hermite_iso < 1e-5 && std::abs(ow.lhs) < 1e-5;
  });
}

CheckResult check_bargmann_basis(const EkmTable& table) {
  return guarded("bargmann_basis", [&](CheckResult& r) {
    const TimeGrid grid = default_time_grid();
    const PhaseGrid phase = default_phase_grid();
    double analytic = 0.0;
    for (int n = 0; n <= 6; ++n) {
      analytic = std::max(analytic, max_abs_diff_on_disk(bargmann_transform(hermite_function(n, grid), phase),
                                                         monomial_basis(n, phase), 2.0));
    }
    double poly = 0.0;
    for (int k = 0; k <= 3; ++k) {
      for (int m = 0; m <= 3; ++m) {
        poly = std::max(poly, max_abs_diff_on_disk(true_poly_bargmann(hermite_function(m, grid), k, phase),
                                                   basis_ekm(k, m, phase, table), 2.0));
      }
    }
    r.metrics = {{"max_B_hn_minus_en", analytic}, {"max_Bk_hm_minus_ekm", poly}};
    r.passed = analytic < 1e-6 && poly < 1e-5;
  });
}

CheckResult check_ekm_gram(const EkmTable& table) {
  return guarded("ekm_basis_gram", [&](CheckResult& r) {
    const PhaseGrid phase = default_phase_grid();
    std::vector<FockField> basis;
    for (int k = 0; k <= 3; ++k) {
      for (int m = 0; m <= 5; ++m) basis.push_back(basis_ekm(k, m, phase, table));
    }
    double dev = 0.0;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const cplx g = fock_inner_product(basis[a], basis[b]);
        dev = std::max(dev, std::abs(g - (a == b ? 1.0 : 0.0)));
      }
    }
    r.metrics = {{"max_gram_deviation", dev}};
    r.passed = dev < 1e-4;
  });
}

CheckResult check_polyanalytic_ladder(std::size_t signals, std::uint64_t seed) {
  return guarded("polyanalytic_ladder", [&](CheckResult& r) {
    const TimeGrid grid = default_time_grid();
    const PhaseGrid phase = default_phase_grid();
    auto rng = stream(seed, "ladder");
    double worst = 0.0;
    for (std::size_t s = 0; s < signals; ++s) {
      const Signal f = random_hermite_signal(grid, 8, rng);
      for (int n = 0; n <= 3; ++n) {
        const FockField F = true_poly_bargmann(f, n, phase);
        const auto hi = dbar_power(F, n + 1);
        const auto lo = dbar_power(F, n);
        worst = std::max(worst, fock_norm_on(hi.field, hi.valid, 4.0) / fock_norm_on(lo.field, lo.valid, 4.0));
      }
    }
    const FockField example(
        GridField(phase, Eigen::MatrixXcd::NullaryExpr(static_cast<Idx>(phase.nx()), static_cast<Idx>(phase.nomega()),
                                                       [&](Idx i, Idx k) {
                                                         const cplx z = phase.z(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
                                                         return std::conj(z) * z - 1.0;
                                                       })),
        NormTag::raw_F);
    const auto ex = dbar_power(example, 2);
    const double example_residual = max_abs_on_mask(ex.field, ex.valid);
    const auto e3 = dbar_power(monomial_basis(3, phase), 1);
    const double cauchy_riemann = max_abs_on_mask(e3.field, e3.valid);
    r.metrics = {{"max_annihilation_ratio", worst},
                 {"zbar_z_minus_1_residual", example_residual},
                 {"e3_dbar_residual", cauchy_riemann}};
    r.passed = worst < 1e-3 && example_residual < 1e-6 && cauchy_riemann < 1e-6;
  });
}

CheckResult check_isometries(std::uint64_t seed) {
  return guarded("transform_isometries", [&](CheckResult& r) {
    const TimeGrid grid = default_time_grid();
    const PhaseGrid phase = default_phase_grid();
    auto rng = stream(seed, "isometries");
    double true_poly = 0.0;
    double poly = 0.0;
    double super = 0.0;
    for (int n = 0; n <= 4; ++n) {
      const Signal f = random_hermite_signal(grid, 8, rng);
      true_poly = std::max(true_poly, relative_gap(fock_norm(true_poly_bargmann(f, n, phase)), f.norm()));
    }
    for (int n = 1; n <= 4; ++n) {
      std::vector<Signal> ch;
      std::vector<Signal> win;
      for (int k = 0; k < n; ++k) {
        ch.push_back(random_hermite_signal(grid, 8, rng));
        win.push_back(hermite_function(k, grid));
      }
      const VectorSignal f(ch);
      poly = std::max(poly, relative_gap(fock_norm(poly_bargmann(f, phase)), f.norm()));
      const double s = std::sqrt(phase_quadrature(super_stft(f, VectorSignal(win), phase), PhaseWeight::none));
      super = std::max(super, relative_gap(s, f.norm()));
    }
    r.metrics = {{"max_true_poly_norm_error", true_poly}, {"max_poly_norm_error", poly}, {"max_super_stft_norm_error", super}};
    r.passed = true_poly < 1e-4 && poly < 1e-4 && super < 1e-4;
  });
}

CheckResult check_s0_norm() {
  return guarded("s0_norm", [&](CheckResult& r) {
    const TimeGrid grid = default_time_grid();
    const PhaseGrid phase = default_phase_grid();
    double worst = 0.0;
    for (int n = 0; n <= 4; ++n) {
      const double ratio = s0_norm_numeric(n, phase, grid) / s0_norm_formula(n);
      worst = std::max(worst, std::abs(ratio - 1.0));
      r.metrics.emplace_back("ratio_n" + std::to_string(n), ratio);
    }
    r.metrics.emplace_back("formula_n0", s0_norm_formula(0));
    r.passed = worst < 0.01 && s0_norm_formula(0) == 2.0;
  });
}

CheckResult check_lattice_algebra(std::uint64_t seed) {
  return guarded("lattice_algebra", [&](CheckResult& r) {
    const Lattice2D rect = rect_lattice(0.7, 1.3);
    const bool adjoint_match = point_set_coordinates(enumerate_points(adjoint_lattice(rect), 5.0)) ==
                               point_set_coordinates(enumerate_points(rect_lattice(1.0 / 1.3, 1.0 / 0.7), 5.0));
    auto rng = stream(seed, "lattices");
    double product = 0.0;
    bool involution = true;
    std::vector<Lattice2D> lattices;
    while (lattices.size() < 32) {
      Eigen::Matrix2d a;
      for (int i = 0; i < 4; ++i) a(i / 2, i % 2) = 3.0 * uniform01(rng) - 1.5;
      if (std::abs(a.determinant()) < 0.2) continue;
      lattices.emplace_back(a);
    }
    for (const auto& l : lattices) {
      product = std::max(product, std::abs(density(l) * density(adjoint_lattice(l)) - 1.0));
      involution = involution && point_set_coordinates(enumerate_points(adjoint_lattice(adjoint_lattice(l)), 3.0)) ==
                                     point_set_coordinates(enumerate_points(l, 3.0));
    }
    const TimeGrid grid(8.0, 2048);
    const Signal g = gaussian_window(grid);
    double commute = 0.0;
    for (const Lattice2D& l : {rect, lattices.front()}) {
      for (const auto& mu : enumerate_points(adjoint_lattice(l), 3.0).points) {
        commute = std::max(commute, commutation_residual(l, mu.x, mu.omega, g));
      }
    }
    const double non_adjoint = commutation_residual(square_lattice(1.0), 0.5, 0.0, g);
    r.metrics = {{"adjoint_rect_point_sets_equal", adjoint_match ? 1.0 : 0.0},
                 {"max_density_product_error", product},
                 {"adjoint_involution", involution ? 1.0 : 0.0},
                 {"max_adjoint_commutation_residual", commute},
                 {"non_adjoint_residual", non_adjoint}};
    r.passed = adjoint_match && product < 1e-12 && involution && commute < 1e-9 && std::abs(non_adjoint - 2.0) < 1e-6;
  });
}

CheckResult check_gram_consistency(std::uint64_t seed) {
  return guarded("gram_consistency", [&](CheckResult& r) {
    const TimeGrid grid = working_grid({4.0});
    const GaborSystemSpec un{SystemKind::multi_union, hermite_windows(3), rect_lattice(0.9, 0.8)};
    const Eigen::MatrixXcd fast = gram_matrix(un, 3.0, grid);
    const Eigen::MatrixXcd ref = gram_matrix_reference(un, 3.0, grid);
    const double gap = (fast - ref).cwiseAbs().maxCoeff();
    const double herm = (fast - fast.adjoint()).cwiseAbs().maxCoeff();
    const GaborSystemSpec super{SystemKind::super, hermite_windows(2), square_lattice(1.0)};
    const Eigen::MatrixXcd gs = gram_matrix(super, 3.0, grid);
    const double diag = (gs.diagonal().array() - 2.0).abs().maxCoeff();
    auto rng = stream(seed, "frame-operator");
    const VectorSignal f({random_hermite_signal(grid, 8, rng), random_hermite_signal(grid, 8, rng)});
    const VectorSignal sf = frame_operator_apply(super, 3.0, f);
    const double quad = vector_inner_product(sf, f).real();
    const double sum = frame_sum(super, 3.0, f);
    r.metrics = {{"fast_vs_reference_gap", gap},
                 {"hermitian_defect", herm},
                 {"super_diagonal_error", diag},
                 {"quadratic_form_gap", relative_gap(quad, sum)}};
    r.passed = gap < 1e-12 && herm < 1e-12 && diag < 1e-8 && relative_gap(quad, sum) < 1e-10;
  });
}

CheckResult check_route_equivalence(std::size_t signals, std::uint64_t seed) {
  return guarded("true_poly_route_equivalence", [&](CheckResult& r) {
    const TimeGrid grid = default_time_grid();
    const PhaseGrid phase = default_phase_grid();
    auto rng = stream(seed, "routes");
    double worst = 0.0;
    for (std::size_t s = 0; s < signals; ++s) {
      const Signal f = random_hermite_signal(grid, 8, rng);
      for (int n = 0; n <= 3; ++n) {
        const FockField a = true_poly_bargmann(f, n, phase);
        const auto b = true_poly_bargmann_derivative_route(f, n, phase);
        worst = std::max(worst, max_abs_diff_on_disk(a, b.field, 3.0) / max_abs_on_disk(a, 3.0));
      }
    }
    r.metrics = {{"max_relative_route_gap", worst}};
    r.passed = worst < 1e-3;
  });
}

CheckResult check_decomposition(const EkmTable& table) {
  return guarded("true_space_decomposition", [&](CheckResult& r) {
    const PhaseGrid phase = default_phase_grid();
    auto rng = stream(0, "decomposition");
    GridField sum = GridField::zeros(phase);
    for (int k = 0; k <= 3; ++k) {
      const Eigen::VectorXcd c = complex_gaussian(rng, 6);
      for (int m = 0; m <= 5; ++m) sum.values() += c[m] * basis_ekm(k, m, phase, table).values();
    }
    const FockField F(sum, NormTag::raw_F);
    GridField rebuilt = GridField::zeros(phase);
    double cross = 0.0;
    std::vector<FockField> parts;
    for (int k = 0; k <= 3; ++k) {
      parts.push_back(project_true_component(F, k, 8, table));
      rebuilt.values() += parts.back().values();
    }
    for (std::size_t a = 0; a < parts.size(); ++a) {
      for (std::size_t b = a + 1; b < parts.size(); ++b) cross = std::max(cross, std::abs(fock_inner_product(parts[a], parts[b])));
    }
    GridField diff = rebuilt;
    diff.values() -= F.values();
    const double err = fock_norm(FockField(diff, NormTag::raw_F)) / fock_norm(F);
    r.metrics = {{"reconstruction_error", err}, {"max_cross_component_inner_product", cross}};
    r.passed = err < 1e-3 && cross < 1e-3;
  });
}

CheckResult check_nyquist_bracketing(int n, std::uint64_t seed) {
  return guarded("nyquist_bracketing_n" + std::to_string(n), [&](CheckResult& r) {
    const auto radii = default_radii();
    const TimeGrid grid = working_grid(radii);
    bool ok = true;
    for (const bool above : {false, true}) {
      const double d = n + (above ? 0.5 : -0.5);
      const Lattice2D lattice = lattice_with_density(d);
      const std::string tag = above ? "_above" : "_below";
      const BoundsReport samp = sampling_bounds(n, lattice, radii, 64, seed);
      const InterpolationTrials interp = interpolation_trials(n, lattice, kDefaultInterpolationRadius, 32, seed);
      const GaborSystemSpec super{SystemKind::super, hermite_windows(n), lattice};
      const BoundsReport frame = estimate_frame_bounds(super, radii, grid, 32, seed);
      const BoundsReport riesz = estimate_riesz_bounds(super, radii, grid);
      r.metrics.emplace_back("sampling_lower" + tag, samp.lower.back());
      r.metrics.emplace_back("interpolation_median_residual" + tag, interp.median_residual);
      r.metrics.emplace_back("interpolation_max_coefficient_norm" + tag, interp.max_coefficient_norm);
      r.metrics.emplace_back("superframe_lower" + tag, frame.lower.back());
      r.metrics.emplace_back("vector_riesz_lower" + tag, riesz.lower.back());
      ok = ok && samp.verdict == expected(above, true) && interp.verdict == expected(above, false) &&
           frame.verdict == expected(above, true) && riesz.verdict == expected(above, false);
      if (!ok && r.note.empty()) {
        r.note = std::string("unexpected verdicts at density ") + std::to_string(d) + ": sampling=" +
                 verdict_name(samp.verdict) + " interpolation=" + verdict_name(interp.verdict) +
                 " superframe=" + verdict_name(frame.verdict) + " riesz=" + verdict_name(riesz.verdict);
      }
    }
    r.passed = ok;
  });
}

CheckResult check_duality(int n, std::uint64_t seed) {
  return guarded("duality_n" + std::to_string(n), [&](CheckResult& r) {
    const auto radii = default_radii();
    const TimeGrid grid = working_grid(radii);
    bool ok = true;
    for (const bool above : {false, true}) {
      const double d = n + (above ? 0.5 : -0.5);
      const DualityReport rep = duality_check(hermite_windows(n), lattice_with_density(d), radii, grid, 32, seed);
      const std::string tag = above ? "_above" : "_below";
      r.metrics.emplace_back("super_frame_lower" + tag, rep.super_frame.lower.back());
      r.metrics.emplace_back("union_riesz_adjoint_lower" + tag, rep.union_riesz.lower.back());
      r.metrics.emplace_back("vector_riesz_lower" + tag, rep.vector_riesz.lower.back());
      r.metrics.emplace_back("multi_frame_adjoint_lower" + tag, rep.multi_frame.lower.back());
      const bool decided = rep.super_frame.verdict != Verdict::inconclusive && rep.multi_frame.verdict != Verdict::inconclusive;
      ok = ok && decided && rep.frame_pair_agrees && rep.riesz_pair_agrees;
      if (!ok && r.note.empty()) r.note = "verdict disagreement at density " + std::to_string(d);
    }
    r.passed = ok;
  });
}

CheckResult check_multiplex(std::uint64_t seed) {
  return guarded("multiplex_round_trip", [&](CheckResult& r) {
    const TimeGrid grid = working_grid({kDefaultMuxRadius});
    const VectorSignal ch = demo_channels(2, grid, 8, seed);
    const Lattice2D good = lattice_with_density(2.5);
    const MuxReport rep = mux_report(ch, good, kDefaultMuxRadius, {0.0, 1e-4, 1e-3, 1e-2}, seed);
    const double err = std::max(rep.relative_error[0][0], rep.relative_error[0][1]);
    bool monotone = true;
    for (std::size_t s = 1; s < rep.sigmas.size(); ++s) {
      for (std::size_t k = 0; k < 2; ++k) monotone = monotone && rep.snr_db[s][k] < rep.snr_db[s - 1][k];
    }
    const VectorSignal solo({ch.channel(0), Signal::zeros(grid)});
    const auto decoded = mux_decode(mux_encode(solo, good, kDefaultMuxRadius), good, kDefaultMuxRadius);
    const double crosstalk = decoded.signals.channel(1).norm() / ch.channel(0).norm();
    const Lattice2D bad = lattice_with_density(1.5);
    const auto below = mux_decode(mux_encode(ch, bad, kDefaultMuxRadius), bad, kDefaultMuxRadius);
    double below_err = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
      below_err = std::max(below_err, (below.signals.channel(k) + ch.channel(k) * cplx(-1.0)).norm() / ch.channel(k).norm());
    }
    r.metrics = {{"round_trip_error", err},
                 {"noiseless_min_snr_db", std::min(rep.snr_db[0][0], rep.snr_db[0][1])},
                 {"crosstalk", crosstalk},
                 {"below_threshold_error", below_err},
                 {"below_threshold_flag", below.ill_conditioned ? 1.0 : 0.0}};
    r.passed = err < 1e-3 && crosstalk < 1e-3 && monotone && std::min(rep.snr_db[0][0], rep.snr_db[0][1]) > 60.0 &&
               (below.ill_conditioned || below_err > 0.1);
  });
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["passed"] = passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.metrics) m[k] = v;
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["metrics"] = m;
    if (!c.note.empty()) entry["note"] = c.note;
    j["checks"].push_back(entry);
  }
  return j.dump(2) + "\n";
}

VerifyReport run_verify(const VerifyOptions& options, void (*progress)(const CheckResult&)) {
  if (options.suite != "fast" && options.suite != "full") {
    throw ConfigError("unknown verify suite '" + options.suite + "' (expected fast or full)");
  }
  const bool full = options.suite == "full";
  VerifyReport report;
  report.suite = options.suite;
  report.seed = options.seed;
  std::optional<EkmTable> table;
  std::string table_error;
  try {
    table = EkmTable::load(options.ekm_table);
  } catch (const std::exception& e) {
    table_error = e.what();
  }
  auto table_check = [&](const std::string& name, CheckResult (*fn)(const EkmTable&)) {
    if (table) return fn(*table);
    CheckResult r;
    r.name = name;
    r.note = table_error;
    return r;
  };
  const std::uint64_t seed = options.seed;
  std::vector<std::function<CheckResult()>> plan = {
      [] { return check_hermite_orthonormality(8); },
      [&] { return check_stft_paths(full ? 64 : 8, seed); },
      [&] { return check_stft_isometry(full ? 64 : 16, seed); },
      [&] { return table_check("bargmann_basis", check_bargmann_basis); },
      [&] { return table_check("ekm_basis_gram", check_ekm_gram); },
      [&] { return check_polyanalytic_ladder(full ? 16 : 4, seed); },
      [&] { return check_isometries(seed); },
      [] { return check_s0_norm(); },
      [&] { return check_lattice_algebra(seed); },
      [&] { return check_gram_consistency(seed); },
      [&] { return check_route_equivalence(full ? 16 : 4, seed); },
      [&] { return table_check("true_space_decomposition", check_decomposition); },
      [&] { return check_nyquist_bracketing(1, seed); },
      [&] { return check_duality(1, seed); },
      [&] { return check_multiplex(seed); },
  };
  if (full) {
    for (int n = 2; n <= 3; ++n) {
      plan.emplace_back([n, seed] { return check_nyquist_bracketing(n, seed); });
      plan.emplace_back([n, seed] { return check_duality(n, seed); });
    }
  }
  for (const auto& step : plan) {
    report.checks.push_back(step());
    if (progress) progress(report.checks.back());
  }
  return report;
}

}  // namespace polyfock
