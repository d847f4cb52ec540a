#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cfss/artwork.hpp"
#include "cfss/config.hpp"
#include "cfss/estimator.hpp"
#include "cfss/feed.hpp"
#include "cfss/goldberg.hpp"
#include "cfss/io.hpp"
#include "cfss/postproc.hpp"
#include "cfss/synthesis.hpp"
#include "cfss/tmm.hpp"

#include <json.hpp>

namespace fs = std::filesystem;
using namespace cfss;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDataFormat = 65;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<double> freq_min_hz;
  std::optional<double> freq_max_hz;
  std::optional<double> freq_step_hz;
};

ProjectConfig resolve_config(const CommonOpts& opts) {
  ProjectConfig cfg;
  if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
  if (opts.freq_min_hz) cfg.frequency.min_hz = *opts.freq_min_hz;
  if (opts.freq_max_hz) cfg.frequency.max_hz = *opts.freq_max_hz;
  if (opts.freq_step_hz) cfg.frequency.step_hz = *opts.freq_step_hz;
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  return cfg;
}

fs::path ensure_outdir(const ProjectConfig& cfg) {
  fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

void write_sidecar(const fs::path& dir, const std::string& command, const ProjectConfig& cfg) {
  write_text_file(dir / (command + ".params.json"), config_to_json(cfg));
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
  auto* c = cmd->add_option("--config", opts.config_path, "project config file (JSON)");
  if (config_required) c->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--freq-min", opts.freq_min_hz, "sweep start, Hz");
  cmd->add_option("--freq-max", opts.freq_max_hz, "sweep stop, Hz");
  cmd->add_option("--freq-step", opts.freq_step_hz, "sweep step, Hz");
}

int cmd_synth(const CommonOpts& opts) {
  const ProjectConfig cfg = resolve_config(opts);
  const fs::path dir = ensure_outdir(cfg);
  const StackTemplate tmpl{cfg.stack.d1_mm / kMmPerMeter, cfg.stack.d2_mm / kMmPerMeter,
                           cfg.stack.eps_r, 0.0, cfg.stack.z0_ohm};
  const SynthesisResult result = synthesize_lc(
      config_band_target(cfg), tmpl, {cfg.synth.c_lo_farads, cfg.synth.c_hi_farads, cfg.synth.c_count},
      {cfg.synth.l_lo_henries, cfg.synth.l_hi_henries, cfg.synth.l_count});
  write_text_file(dir / "synthesis.csv", synthesis_csv(result));
  write_sidecar(dir, "synth", cfg);
  const LcCandidate& best = result.candidates.front();
  std::cout << "best candidate: C = " << best.c_farads * 1e15 << " fF, L = "
            << best.l_henries * 1e9 << " nH, score = " << best.score_db
            << " dB, feasible = " << (best.feasible ? "yes" : "no") << "\n";
  return result.any_feasible ? kExitOk : kExitInfeasible;
}

int cmd_response(const CommonOpts& opts, std::optional<double> theta_deg,
                 const std::string& pol_name, bool lossless) {
  const ProjectConfig cfg = resolve_config(opts);
  const fs::path dir = ensure_outdir(cfg);
  const StackSpec stack = config_stack(cfg, lossless);
  const Eigen::VectorXd grid = config_freq_grid(cfg);
  write_text_file(dir / "response.csv", sparam_csv(stack_response(stack, grid)));
  if (theta_deg) {
    const Polarization pol = pol_name == "TM" ? Polarization::tm : Polarization::te;
    const SparamSpectrum ob =
        stack_response_oblique(stack, grid, *theta_deg * kPi / 180.0, pol);
    write_text_file(dir / "response_oblique.csv", sparam_csv(ob));
  }
  write_sidecar(dir, "response", cfg);
  return kExitOk;
}

int cmd_tessellate(const CommonOpts& opts) {
  const ProjectConfig cfg = resolve_config(opts);
  const fs::path dir = ensure_outdir(cfg);

  nlohmann::ordered_json stats;
  stats["schema"] = "cfss-tess-stats";
  stats["version"] = 1;
  nlohmann::ordered_json layers = nlohmann::ordered_json::array();
  for (double radius : cfg.tessellation.layer_radii_mm) {
    GoldbergSpec spec;
    spec.m = cfg.tessellation.m;
    spec.radius_mm = radius;
    const GoldbergTessellation sphere = build_goldberg(spec);
    const GoldbergTessellation hemi =
        hemisphere_with_skirt(sphere, cfg.tessellation.skirt_height_mm);

    char name[64];
    std::snprintf(name, sizeof(name), "tessellation_r%.2f.json", radius);
    write_text_file(dir / name, export_tessellation_json(hemi));

    double p2_min = 1e30, p2_max = 0.0;
    std::array<int, 16> histogram{};
    for (const TessCell& c : hemi.cells) {
      if (c.kind != CellKind::hexagon) continue;
      p2_min = std::min(p2_min, c.p2_mm);
      p2_max = std::max(p2_max, c.p2_mm);
    }
    for (const TessCell& c : hemi.cells) {
      if (c.kind != CellKind::hexagon) continue;
      const int bin = std::min<int>(15, static_cast<int>((c.p2_mm - p2_min) /
                                                         std::max(1e-9, p2_max - p2_min) * 16));
      ++histogram[bin];
    }
    nlohmann::ordered_json jl;
    jl["radius_mm"] = radius;
    jl["cells"] = hemi.face_count();
    jl["pentagons"] = hemi.pentagon_count;
    jl["hexagons"] = hemi.hexagon_count;
    jl["edges"] = hemi.edge_count();
    jl["p2_min_mm"] = p2_min;
    jl["p2_max_mm"] = p2_max;
    jl["p2_histogram"] = histogram;
    layers.push_back(jl);
  }
  stats["layers"] = layers;
  write_text_file(dir / "tessellation_stats.json", stats.dump(1) + "\n");
  write_sidecar(dir, "tessellate", cfg);
  return kExitOk;
}

int cmd_artwork(const CommonOpts& opts, const std::string& format,
                const std::string& override_table) {
  ProjectConfig cfg = resolve_config(opts);
  if (!override_table.empty()) {
    cfg.artwork.use_override_table = true;
    cfg.artwork.override_table_path = override_table;
  }
  const fs::path dir = ensure_outdir(cfg);
  const ArtworkLaws laws = config_artwork_laws(cfg);

  if (cfg.tessellation.layer_radii_mm.size() != 3)
    throw std::invalid_argument("artwork expects three layer radii (inner, mid, outer)");

  const LayerId ids[3] = {LayerId::inner_cap, LayerId::mid_ind, LayerId::outer_cap};
  std::vector<LayerArtwork> artworks;
  for (int i = 0; i < 3; ++i) {
    GoldbergSpec spec;
    spec.m = cfg.tessellation.m;
    spec.radius_mm = cfg.tessellation.layer_radii_mm[i];
    const GoldbergTessellation hemi =
        hemisphere_with_skirt(build_goldberg(spec), cfg.tessellation.skirt_height_mm);
    artworks.push_back(build_layer(hemi, ids[i], laws));
  }

  if (format == "json") {
    write_text_file(dir / "artwork.json", export_geometry_json(artworks));
  } else if (format == "svg") {
    for (const LayerArtwork& a : artworks) {
      write_text_file(dir / (std::string("artwork_") + layer_name(a.layer_id) + ".svg"),
                      export_svg(a, cfg.tessellation.skirt_height_mm));
    }
  } else if (format == "mesh") {
    write_text_file(dir / "artwork.mesh", export_mesh(artworks));
  } else {
    throw CLI::ValidationError("--format", "unknown format " + format);
  }

  nlohmann::ordered_json drc;
  drc["schema"] = "cfss-drc";
  drc["version"] = 1;
  drc["min_width_mm"] = cfg.artwork.drc_min_width_mm;
  drc["min_gap_mm"] = cfg.artwork.drc_min_gap_mm;
  nlohmann::ordered_json per_layer = nlohmann::ordered_json::array();
  bool clean = true;
  for (const LayerArtwork& a : artworks) {
    const DrcReport report =
        drc_check(a, cfg.artwork.drc_min_width_mm, cfg.artwork.drc_min_gap_mm);
    clean = clean && report.clean();
    nlohmann::ordered_json jl;
    jl["layer"] = layer_name(a.layer_id);
    jl["trace_count"] = a.traces.size();
    nlohmann::ordered_json widths = nlohmann::ordered_json::array();
    for (const auto& v : report.width_violations)
      widths.push_back({{"cell", v.cell_id}, {"width_mm", v.width_mm}});
    jl["width_violations"] = widths;
    nlohmann::ordered_json gaps = nlohmann::ordered_json::array();
    for (const auto& v : report.clearance_violations)
      gaps.push_back({{"cell_a", v.cell_a}, {"cell_b", v.cell_b},
                      {"clearance_mm", v.clearance_mm}});
    jl["clearance_violations"] = gaps;
    jl["self_intersections"] = report.self_intersections;
    per_layer.push_back(jl);
  }
  drc["layers"] = per_layer;
  drc["clean"] = clean;
  write_text_file(dir / "drc_report.json", drc.dump(1) + "\n");
  write_sidecar(dir, "artwork", cfg);
  std::cout << "artwork written (" << format << "), DRC " << (clean ? "clean" : "violations")
            << "\n";
  return kExitOk;
}

int cmd_feedfit(const CommonOpts& opts, const std::string& horn_path, bool literal_a9) {
  const ProjectConfig cfg = resolve_config(opts);
  const fs::path dir = ensure_outdir(cfg);
  const std::string path = horn_path.empty() ? cfg.feed.horn_csv : horn_path;
  if (path.empty()) throw CLI::ValidationError("--horn", "horn CSV path required");
  const HornData horn = read_horn_csv(path);
  const QFit fit = fit_q(horn, literal_a9);
  write_text_file(dir / "qfit.csv", qfit_csv(fit));
  write_sidecar(dir, "feedfit", cfg);
  return kExitOk;
}

int cmd_gaussproc(const CommonOpts& opts, const std::string& farfield_path,
                  std::optional<double> w0_mm) {
  ProjectConfig cfg = resolve_config(opts);
  if (w0_mm) cfg.postproc.w0_mm = *w0_mm;
  const fs::path dir = ensure_outdir(cfg);
  const FarFieldGrid grid = read_farfield_csv(farfield_path);

  SweepTrace out;
  out.freq_hz = grid.freq_hz;
  out.s21.resize(grid.freq_hz.size());
  for (Eigen::Index i = 0; i < grid.freq_hz.size(); ++i) {
    GaussianSpec spec;
    spec.w0_mm = cfg.postproc.w0_mm;
    spec.spacing_lambda = cfg.postproc.spacing_lambda;
    spec.half_extent_mm = cfg.postproc.aperture_half_extent_mm;
    const ApertureGrid aperture = gaussian_aperture(spec, grid.freq_hz[i]);
    const Eigen::MatrixXcd ffg =
        backproject_farfield(aperture, grid.theta_rad, grid.phi_rad, grid.freq_hz[i]);
    out.s21[i] = gaussian_weighting(grid.s21[i], ffg, grid.theta_rad);
  }
  const fs::path in_name = fs::path(farfield_path).stem();
  write_text_file(dir / (in_name.string() + "_gaussian.csv"), sweep_csv(out));
  write_sidecar(dir, "gaussproc", cfg);
  return kExitOk;
}

int cmd_timegate(const CommonOpts& opts, const std::string& trace_path,
                 std::optional<double> gate_ns) {
  ProjectConfig cfg = resolve_config(opts);
  if (gate_ns) cfg.postproc.gate_ns = *gate_ns;
  const fs::path dir = ensure_outdir(cfg);
  const SweepTrace trace = read_sweep_csv(trace_path);
  GateConfig gate;
  gate.window_ns = cfg.postproc.gate_ns;
  const SweepTrace gated = time_gate(trace, gate);
  const fs::path in_name = fs::path(trace_path).stem();
  write_text_file(dir / (in_name.string() + "_gated.csv"), sweep_csv(gated));
  write_sidecar(dir, "timegate", cfg);
  return kExitOk;
}

int cmd_estimate(const CommonOpts& opts) {
  const ProjectConfig cfg = resolve_config(opts);
  const fs::path dir = ensure_outdir(cfg);

  ShellModel shell;
  shell.sphere_radius_mm = cfg.estimate.shell_radius_mm;
  shell.skirt_height_mm = cfg.tessellation.skirt_height_mm;
  shell.stack = config_stack(cfg, true);

  FeedSpec feed;
  feed.q = cfg.feed.q;

  const Eigen::VectorXd grid = config_freq_grid(cfg);
  const Eigen::VectorXd bore = boresight_transmission_db(shell, feed, grid);
  std::ostringstream os;
  os << "# cfss-estimate v1\n";
  os << "freq_hz,norm_db\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n", grid[i], bore[i]);
    os << buf;
  }
  write_text_file(dir / "estimate_boresight.csv", os.str());

  ProbeConfig probes;
  probes.r_probe_mm = cfg.estimate.r_probe_mm;
  probes.r_mm = cfg.estimate.r_mm;
  probes.theta_feed_rad = cfg.estimate.theta_feed_deg * kPi / 180.0;
  for (double deg : cfg.estimate.theta_probe_deg)
    probes.theta_probe_rad.push_back(deg * kPi / 180.0);

  std::string scan_all;
  for (double f : cfg.estimate.scan_freqs_hz) {
    const std::vector<ProbeSample> samples = scanned_field(shell, feed, probes, f);
    const std::string block = probe_csv(f, samples);
    if (scan_all.empty()) {
      scan_all = block;
    } else {
      // keep a single header
      scan_all += block.substr(block.find('\n', block.find('\n') + 1) + 1);
    }
  }
  write_text_file(dir / "estimate_scan.csv", scan_all);
  write_sidecar(dir, "estimate", cfg);
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal band-pass FSS design toolchain"};
  app.require_subcommand(1);

  CommonOpts synth_opts, response_opts, tess_opts, artwork_opts, feedfit_opts, gauss_opts,
      gate_opts, estimate_opts;

  auto* synth = app.add_subcommand("synth", "L/C sweep against the band target");
  add_common(synth, synth_opts, false);

  auto* response = app.add_subcommand("response", "unit-cell S-parameter sweep");
  add_common(response, response_opts, false);
  std::optional<double> theta_deg;
  std::string pol = "TE";
  bool lossless = false;
  response->add_option("--theta", theta_deg, "oblique incidence angle, degrees");
  response->add_option("--pol", pol, "TE or TM")->check(CLI::IsMember({"TE", "TM"}));
  response->add_flag("--lossless", lossless, "force tan_delta = 0");

  auto* tess = app.add_subcommand("tessellate", "Goldberg layers with hemisphere and skirt");
  add_common(tess, tess_opts, false);

  auto* artwork = app.add_subcommand("artwork", "per-layer trace artwork and DRC");
  add_common(artwork, artwork_opts, false);
  std::string format = "json";
  std::string override_table;
  artwork->add_option("--format", format, "json | svg | mesh")
      ->check(CLI::IsMember({"json", "svg", "mesh"}));
  artwork->add_option("--override-table", override_table, "CSV p2_mm,g_mm,w_l_mm");

  auto* feedfit = app.add_subcommand("feedfit", "fit raised-cosine q to horn data");
  add_common(feedfit, feedfit_opts, false);
  std::string horn_path;
  bool literal_a9 = false;
  feedfit->add_option("--horn", horn_path, "horn CSV: freq_hz,gain_dbi,beamwidth_deg");
  feedfit->add_flag("--literal-a9", literal_a9, "use the printed beamwidth relation verbatim");

  auto* gauss = app.add_subcommand("gaussproc", "Gaussian far-field weighting");
  add_common(gauss, gauss_opts, false);
  std::string farfield_path;
  std::optional<double> w0_mm;
  gauss->add_option("--farfield", farfield_path, "far-field CSV")->required();
  gauss->add_option("--w0-mm", w0_mm, "beam waist radius, mm");

  auto* gate = app.add_subcommand("timegate", "time gate a sweep trace");
  add_common(gate, gate_opts, false);
  std::string trace_path;
  std::optional<double> gate_ns;
  gate->add_option("--trace", trace_path, "sweep CSV")->required();
  gate->add_option("--gate-ns", gate_ns, "gate width, ns");

  auto* estimate = app.add_subcommand("estimate", "thin-shell radome transmission estimate");
  add_common(estimate, estimate_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_opts);
    if (response->parsed()) return cmd_response(response_opts, theta_deg, pol, lossless);
    if (tess->parsed()) return cmd_tessellate(tess_opts);
    if (artwork->parsed()) return cmd_artwork(artwork_opts, format, override_table);
    if (feedfit->parsed()) return cmd_feedfit(feedfit_opts, horn_path, literal_a9);
    if (gauss->parsed()) return cmd_gaussproc(gauss_opts, farfield_path, w0_mm);
    if (gate->parsed()) return cmd_timegate(gate_opts, trace_path, gate_ns);
    if (estimate->parsed()) return cmd_estimate(estimate_opts);
  } catch (const DataFormatError& e) {
    std::cerr << "data format error: " << e.what() << "\n";
    return kExitDataFormat;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
