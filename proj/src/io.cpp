#include "cfss/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cfss {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

// Numeric rows of a CSV file; comment lines (#) and a leading column-name row
// are skipped.
std::vector<std::vector<double>> read_rows(const std::filesystem::path& path, size_t columns) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
      if (!numeric) break;
    }
    if (!numeric) {
      if (rows.empty()) continue; // column-name header
      throw DataFormatError(path.string() + ":" + std::to_string(lineno) +
                            ": non-numeric cell");
    }
    if (row.size() != columns) {
      throw DataFormatError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(columns) + " columns");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataFormatError(path.string() + ": no data rows");
  return rows;
}

} // namespace

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sparam_csv(const SparamSpectrum& spectrum) {
  std::ostringstream os;
  os << "# cfss-sparams v1\n";
  os << "freq_hz,re_s11,im_s11,re_s21,im_s21\n";
  for (Eigen::Index i = 0; i < spectrum.freq_hz.size(); ++i) {
    os << fmt(spectrum.freq_hz[i]) << "," << fmt(spectrum.s11[i].real()) << ","
       << fmt(spectrum.s11[i].imag()) << "," << fmt(spectrum.s21[i].real()) << ","
       << fmt(spectrum.s21[i].imag()) << "\n";
  }
  return os.str();
}

std::string sweep_csv(const SweepTrace& trace) {
  std::ostringstream os;
  os << "# cfss-sweep v1\n";
  os << "freq_hz,re_s21,im_s21\n";
  for (Eigen::Index i = 0; i < trace.freq_hz.size(); ++i) {
    os << fmt(trace.freq_hz[i]) << "," << fmt(trace.s21[i].real()) << ","
       << fmt(trace.s21[i].imag()) << "\n";
  }
  return os.str();
}

SweepTrace read_sweep_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path, 3);
  SweepTrace trace;
  trace.freq_hz.resize(rows.size());
  trace.s21.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    trace.freq_hz[i] = rows[i][0];
    trace.s21[i] = Complex(rows[i][1], rows[i][2]);
  }
  return trace;
}

std::string farfield_csv(const FarFieldGrid& grid) {
  std::ostringstream os;
  os << "# cfss-farfield v1\n";
  os << "freq_hz,theta_deg,phi_deg,re_s21,im_s21\n";
  for (Eigen::Index f = 0; f < grid.freq_hz.size(); ++f) {
    for (Eigen::Index it = 0; it < grid.theta_rad.size(); ++it) {
      for (Eigen::Index ip = 0; ip < grid.phi_rad.size(); ++ip) {
        os << fmt(grid.freq_hz[f]) << "," << fmt(grid.theta_rad[it] * 180.0 / kPi) << ","
           << fmt(grid.phi_rad[ip] * 180.0 / kPi) << "," << fmt(grid.s21[f](it, ip).real())
           << "," << fmt(grid.s21[f](it, ip).imag()) << "\n";
      }
    }
  }
  return os.str();
}

FarFieldGrid read_farfield_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path, 5);

  std::set<double> freqs, thetas, phis;
  for (const auto& r : rows) {
    freqs.insert(r[0]);
    thetas.insert(r[1]);
    phis.insert(r[2]);
  }
  FarFieldGrid grid;
  grid.freq_hz = Eigen::Map<const Eigen::VectorXd>(
      std::vector<double>(freqs.begin(), freqs.end()).data(), freqs.size());
  std::vector<double> tv(thetas.begin(), thetas.end());
  std::vector<double> pv(phis.begin(), phis.end());
  grid.theta_rad.resize(tv.size());
  grid.phi_rad.resize(pv.size());
  for (size_t i = 0; i < tv.size(); ++i) grid.theta_rad[i] = tv[i] * kPi / 180.0;
  for (size_t i = 0; i < pv.size(); ++i) grid.phi_rad[i] = pv[i] * kPi / 180.0;

  if (rows.size() != freqs.size() * thetas.size() * phis.size())
    throw DataFormatError(path.string() + ": far-field grid is not dense");

  std::map<double, int> fi, ti, pi;
  int idx = 0;
  for (double f : freqs) fi[f] = idx++;
  idx = 0;
  for (double t : thetas) ti[t] = idx++;
  idx = 0;
  for (double p : phis) pi[p] = idx++;

  grid.s21.assign(freqs.size(),
                  Eigen::MatrixXcd::Constant(thetas.size(), phis.size(),
                                             Complex(std::nan(""), 0.0)));
  for (const auto& r : rows) {
    auto& m = grid.s21[fi[r[0]]];
    Complex& slot = m(ti[r[1]], pi[r[2]]);
    if (!std::isnan(slot.real()))
      throw DataFormatError(path.string() + ": duplicate far-field sample");
    slot = Complex(r[3], r[4]);
  }
  return grid;
}

HornData read_horn_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path, 3);
  HornData horn;
  horn.freq_hz.resize(rows.size());
  horn.gain_dbi.resize(rows.size());
  horn.beamwidth_deg.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    horn.freq_hz[i] = rows[i][0];
    horn.gain_dbi[i] = rows[i][1];
    horn.beamwidth_deg[i] = rows[i][2];
  }
  return horn;
}

std::string qfit_csv(const QFit& fit) {
  std::ostringstream os;
  os << "# cfss-qfit v1\n";
  os << "freq_hz,q_dir,q_bw,q_avg\n";
  for (Eigen::Index i = 0; i < fit.freq_hz.size(); ++i) {
    os << fmt(fit.freq_hz[i]) << "," << fmt(fit.q_dir[i]) << "," << fmt(fit.q_bw[i]) << ","
       << fmt(fit.q_avg[i]) << "\n";
  }
  return os.str();
}

std::string synthesis_csv(const SynthesisResult& result) {
  std::ostringstream os;
  os << "# cfss-synthesis v1\n";
  os << "c_farads,l_henries,score_db,feasible\n";
  for (const LcCandidate& c : result.candidates) {
    os << fmt(c.c_farads) << "," << fmt(c.l_henries) << "," << fmt(c.score_db) << ","
       << (c.feasible ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string probe_csv(double f_hz, const std::vector<ProbeSample>& samples) {
  std::ostringstream os;
  os << "# cfss-probes v1\n";
  os << "freq_hz,theta_probe_deg,e_abs_with,e_abs_without,norm_db,direct_path,edge_flag\n";
  for (const ProbeSample& s : samples) {
    os << fmt(f_hz) << "," << fmt(s.theta_probe_rad * 180.0 / kPi) << "," << fmt(s.e_abs_with)
       << "," << fmt(s.e_abs_without) << "," << fmt(s.norm_db) << "," << (s.direct_path ? 1 : 0)
       << "," << (s.edge_flag ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string calibrated_csv(const CalibratedTrace& trace) {
  std::ostringstream os;
  os << "# cfss-calibrated v1\n";
  os << "freq_hz,transmission_db\n";
  for (Eigen::Index i = 0; i < trace.freq_hz.size(); ++i) {
    os << fmt(trace.freq_hz[i]) << "," << fmt(trace.transmission_db[i]) << "\n";
  }
  return os.str();
}

} // namespace cfss
