#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cfss/artwork.hpp"
#include "cfss/synthesis.hpp"

namespace cfss {

// Batch-pipeline configuration. Units are fixed: Hz, mm, F, H, ohm.
struct ProjectConfig {
  struct Stack {
    double c_farads = 78e-15;
    double l_henries = 1.66e-9;
    double d1_mm = 1.25;
    double d2_mm = 1.0;
    double eps_r = 2.4;
    double tan_delta = 0.006;
    double z0_ohm = kFreeSpaceImpedance;
    double metal_conductivity_s_per_m = 1e6;
  } stack;

  struct Frequency {
    double min_hz = 1e9;
    double max_hz = 30e9;
    double step_hz = 10e6;
  } frequency;

  struct Tessellation {
    int m = 20;
    std::vector<double> layer_radii_mm = {72.5, 73.75, 75.0};
    double skirt_height_mm = 25.0;
  } tessellation;

  struct Artwork {
    bool use_override_table = false;
    std::string override_table_path;
    double w_c_mm = 0.25;
    double drc_min_width_mm = 0.15;
    double drc_min_gap_mm = 0.15;
  } artwork;

  struct Feed {
    double q = 2.0;
    std::string horn_csv;
  } feed;

  struct Postproc {
    double w0_mm = 69.0;
    double spacing_lambda = 0.125;
    double aperture_half_extent_mm = 75.0;
    double gate_ns = 0.5;
  } postproc;

  struct Synth {
    double pass_lo_hz = 7.5e9;
    double pass_hi_hz = 12.5e9;
    double min_pass_db = -3.0;
    std::vector<double> stop_freqs_hz = {20e9};
    double max_stop_db = -15.0;
    double c_lo_farads = 40e-15;
    double c_hi_farads = 120e-15;
    int c_count = 17;
    double l_lo_henries = 0.5e-9;
    double l_hi_henries = 12e-9;
    int l_count = 24;
  } synth;

  struct Estimate {
    double shell_radius_mm = 73.75;
    double r_probe_mm = 60.0;
    double r_mm = 136.0;
    std::vector<double> theta_probe_deg = {0.0, 30.0, 45.0, 60.0, 90.0};
    double theta_feed_deg = 0.0;
    std::vector<double> scan_freqs_hz = {10e9, 20e9};
  } estimate;

  std::string output_dir = "out";
};

ProjectConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ProjectConfig& config);

Eigen::VectorXd config_freq_grid(const ProjectConfig& config);
StackSpec config_stack(const ProjectConfig& config, bool lossless = false);
BandTarget config_band_target(const ProjectConfig& config);
ArtworkLaws config_artwork_laws(const ProjectConfig& config);

std::vector<OverrideRow> read_override_table(const std::filesystem::path& path);

} // namespace cfss
