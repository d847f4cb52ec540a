#include "cfss/config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "cfss/io.hpp"

namespace cfss {

namespace {

using nlohmann::json;

template <class T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace

ProjectConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DataFormatError(path.string() + ": " + e.what());
  }

  ProjectConfig cfg;
  if (j.contains("stack")) {
    const json& s = j["stack"];
    maybe(s, "c_farads", cfg.stack.c_farads);
    maybe(s, "l_henries", cfg.stack.l_henries);
    maybe(s, "d1_mm", cfg.stack.d1_mm);
    maybe(s, "d2_mm", cfg.stack.d2_mm);
    maybe(s, "eps_r", cfg.stack.eps_r);
    maybe(s, "tan_delta", cfg.stack.tan_delta);
    maybe(s, "z0_ohm", cfg.stack.z0_ohm);
    maybe(s, "metal_conductivity_s_per_m", cfg.stack.metal_conductivity_s_per_m);
  }
  if (j.contains("frequency")) {
    const json& s = j["frequency"];
    maybe(s, "min_hz", cfg.frequency.min_hz);
    maybe(s, "max_hz", cfg.frequency.max_hz);
    maybe(s, "step_hz", cfg.frequency.step_hz);
  }
  if (j.contains("tessellation")) {
    const json& s = j["tessellation"];
    maybe(s, "m", cfg.tessellation.m);
    maybe(s, "layer_radii_mm", cfg.tessellation.layer_radii_mm);
    maybe(s, "skirt_height_mm", cfg.tessellation.skirt_height_mm);
  }
  if (j.contains("artwork")) {
    const json& s = j["artwork"];
    maybe(s, "use_override_table", cfg.artwork.use_override_table);
    maybe(s, "override_table_path", cfg.artwork.override_table_path);
    maybe(s, "w_c_mm", cfg.artwork.w_c_mm);
    maybe(s, "drc_min_width_mm", cfg.artwork.drc_min_width_mm);
    maybe(s, "drc_min_gap_mm", cfg.artwork.drc_min_gap_mm);
  }
  if (j.contains("feed")) {
    const json& s = j["feed"];
    maybe(s, "q", cfg.feed.q);
    maybe(s, "horn_csv", cfg.feed.horn_csv);
  }
  if (j.contains("postproc")) {
    const json& s = j["postproc"];
    maybe(s, "w0_mm", cfg.postproc.w0_mm);
    maybe(s, "spacing_lambda", cfg.postproc.spacing_lambda);
    maybe(s, "aperture_half_extent_mm", cfg.postproc.aperture_half_extent_mm);
    maybe(s, "gate_ns", cfg.postproc.gate_ns);
  }
  if (j.contains("synth")) {
    const json& s = j["synth"];
    maybe(s, "pass_lo_hz", cfg.synth.pass_lo_hz);
    maybe(s, "pass_hi_hz", cfg.synth.pass_hi_hz);
    maybe(s, "min_pass_db", cfg.synth.min_pass_db);
    maybe(s, "stop_freqs_hz", cfg.synth.stop_freqs_hz);
    maybe(s, "max_stop_db", cfg.synth.max_stop_db);
    maybe(s, "c_lo_farads", cfg.synth.c_lo_farads);
    maybe(s, "c_hi_farads", cfg.synth.c_hi_farads);
    maybe(s, "c_count", cfg.synth.c_count);
    maybe(s, "l_lo_henries", cfg.synth.l_lo_henries);
    maybe(s, "l_hi_henries", cfg.synth.l_hi_henries);
    maybe(s, "l_count", cfg.synth.l_count);
  }
  if (j.contains("estimate")) {
    const json& s = j["estimate"];
    maybe(s, "shell_radius_mm", cfg.estimate.shell_radius_mm);
    maybe(s, "r_probe_mm", cfg.estimate.r_probe_mm);
    maybe(s, "r_mm", cfg.estimate.r_mm);
    maybe(s, "theta_probe_deg", cfg.estimate.theta_probe_deg);
    maybe(s, "theta_feed_deg", cfg.estimate.theta_feed_deg);
    maybe(s, "scan_freqs_hz", cfg.estimate.scan_freqs_hz);
  }
  maybe(j, "output_dir", cfg.output_dir);
  return cfg;
}

std::string config_to_json(const ProjectConfig& c) {
  nlohmann::ordered_json j;
  j["schema"] = "cfss-config";
  j["version"] = 1;
  j["stack"] = {{"c_farads", c.stack.c_farads},
                {"l_henries", c.stack.l_henries},
                {"d1_mm", c.stack.d1_mm},
                {"d2_mm", c.stack.d2_mm},
                {"eps_r", c.stack.eps_r},
                {"tan_delta", c.stack.tan_delta},
                {"z0_ohm", c.stack.z0_ohm},
                {"metal_conductivity_s_per_m", c.stack.metal_conductivity_s_per_m}};
  j["frequency"] = {{"min_hz", c.frequency.min_hz},
                    {"max_hz", c.frequency.max_hz},
                    {"step_hz", c.frequency.step_hz}};
  j["tessellation"] = {{"m", c.tessellation.m},
                       {"layer_radii_mm", c.tessellation.layer_radii_mm},
                       {"skirt_height_mm", c.tessellation.skirt_height_mm}};
  j["artwork"] = {{"use_override_table", c.artwork.use_override_table},
                  {"override_table_path", c.artwork.override_table_path},
                  {"w_c_mm", c.artwork.w_c_mm},
                  {"drc_min_width_mm", c.artwork.drc_min_width_mm},
                  {"drc_min_gap_mm", c.artwork.drc_min_gap_mm}};
  j["feed"] = {{"q", c.feed.q}, {"horn_csv", c.feed.horn_csv}};
  j["postproc"] = {{"w0_mm", c.postproc.w0_mm},
                   {"spacing_lambda", c.postproc.spacing_lambda},
                   {"aperture_half_extent_mm", c.postproc.aperture_half_extent_mm},
                   {"gate_ns", c.postproc.gate_ns}};
  j["synth"] = {{"pass_lo_hz", c.synth.pass_lo_hz},
                {"pass_hi_hz", c.synth.pass_hi_hz},
                {"min_pass_db", c.synth.min_pass_db},
                {"stop_freqs_hz", c.synth.stop_freqs_hz},
                {"max_stop_db", c.synth.max_stop_db},
                {"c_lo_farads", c.synth.c_lo_farads},
                {"c_hi_farads", c.synth.c_hi_farads},
                {"c_count", c.synth.c_count},
                {"l_lo_henries", c.synth.l_lo_henries},
                {"l_hi_henries", c.synth.l_hi_henries},
                {"l_count", c.synth.l_count}};
  j["estimate"] = {{"shell_radius_mm", c.estimate.shell_radius_mm},
                   {"r_probe_mm", c.estimate.r_probe_mm},
                   {"r_mm", c.estimate.r_mm},
                   {"theta_probe_deg", c.estimate.theta_probe_deg},
                   {"theta_feed_deg", c.estimate.theta_feed_deg},
                   {"scan_freqs_hz", c.estimate.scan_freqs_hz}};
  j["output_dir"] = c.output_dir;
  return j.dump(1) + "\n";
}

Eigen::VectorXd config_freq_grid(const ProjectConfig& config) {
  const auto& f = config.frequency;
  if (!(f.min_hz > 0.0 && f.max_hz > f.min_hz && f.step_hz > 0.0))
    throw std::invalid_argument("invalid frequency section");
  const int n = static_cast<int>(std::floor((f.max_hz - f.min_hz) / f.step_hz + 1e-9)) + 1;
  Eigen::VectorXd grid(n);
  for (int i = 0; i < n; ++i) grid[i] = f.min_hz + i * f.step_hz;
  return grid;
}

StackSpec config_stack(const ProjectConfig& config, bool lossless) {
  StackSpec stack = make_clc_stack(config.stack.c_farads, config.stack.l_henries,
                                   config.stack.d1_mm / kMmPerMeter,
                                   config.stack.d2_mm / kMmPerMeter, config.stack.eps_r,
                                   lossless ? 0.0 : config.stack.tan_delta, config.stack.z0_ohm);
  stack.metal_conductivity_s_per_m = config.stack.metal_conductivity_s_per_m;
  return stack;
}

BandTarget config_band_target(const ProjectConfig& config) {
  return {config.synth.pass_lo_hz, config.synth.pass_hi_hz, config.synth.min_pass_db,
          config.synth.stop_freqs_hz, config.synth.max_stop_db};
}

ArtworkLaws config_artwork_laws(const ProjectConfig& config) {
  ArtworkLaws laws;
  laws.w_c_mm = config.artwork.w_c_mm;
  if (config.artwork.use_override_table) {
    laws.use_override_table = true;
    laws.override_table = config.artwork.override_table_path.empty()
                              ? table1_override_laws().override_table
                              : read_override_table(config.artwork.override_table_path);
  }
  return laws;
}

std::vector<OverrideRow> read_override_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open override table " + path.string());
  std::vector<OverrideRow> rows;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    OverrideRow row{};
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &row.p2_mm, &row.g_mm, &row.w_l_mm) != 3) {
      if (rows.empty()) continue; // column-name header
      throw DataFormatError(path.string() + ":" + std::to_string(lineno) + ": bad row");
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw DataFormatError(path.string() + ": no override rows");
  return rows;
}

} // namespace cfss
