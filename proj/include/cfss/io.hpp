#pragma once

#include <filesystem>
#include <string>

#include "cfss/estimator.hpp"
#include "cfss/feed.hpp"
#include "cfss/postproc.hpp"
#include "cfss/synthesis.hpp"
#include "cfss/tmm.hpp"

namespace cfss {

// Malformed input files (unparseable rows, ragged grids).
struct DataFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

// CSV schemas. Every writer emits a versioned comment header followed by a
// column-name row; readers skip comments and non-numeric header rows.
std::string sparam_csv(const SparamSpectrum& spectrum);
std::string sweep_csv(const SweepTrace& trace);
SweepTrace read_sweep_csv(const std::filesystem::path& path);

std::string farfield_csv(const FarFieldGrid& grid);
FarFieldGrid read_farfield_csv(const std::filesystem::path& path);

HornData read_horn_csv(const std::filesystem::path& path);
std::string qfit_csv(const QFit& fit);

std::string synthesis_csv(const SynthesisResult& result);

std::string probe_csv(double f_hz, const std::vector<ProbeSample>& samples);
std::string calibrated_csv(const CalibratedTrace& trace);

} // namespace cfss
