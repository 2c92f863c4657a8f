#include "frost/profiler/probes_csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "frost/error.hpp"

namespace frost::profiler {
namespace {

constexpr const char* kHeader = "limit,energy_j,duration_s,samples,energy_per_sample_j,throughput_sps";

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_probes_csv(std::ostream& out, const std::vector<ProbePoint>& points) {
  out << kHeader << '\n';
  for (const auto& p : points) {
    out << exact(p.limit_fraction) << ',' << exact(p.energy_j) << ',' << exact(p.duration_s) << ','
        << p.samples_processed << ',' << exact(p.energy_per_sample_j) << ','
        << exact(p.throughput_sps) << '\n';
  }
}

std::vector<ProbePoint> read_probes_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kHeader, 0) != 0) {
    throw InvalidArgument(std::string("probes CSV must start with header ") + kHeader);
  }
  std::vector<ProbePoint> points;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cells[6];
    for (auto& c : cells) {
      if (!std::getline(ss, c, ',')) {
        throw InvalidArgument("probes CSV row " + std::to_string(row) + " has too few columns");
      }
    }
    try {
      ProbePoint p;
      p.limit_fraction = std::stod(cells[0]);
      p.energy_j = std::stod(cells[1]);
      p.duration_s = std::stod(cells[2]);
      p.samples_processed = std::stoull(cells[3]);
      p.energy_per_sample_j = std::stod(cells[4]);
      p.throughput_sps = std::stod(cells[5]);
      points.push_back(p);
    } catch (const std::logic_error&) {
      throw InvalidArgument("malformed number in probes CSV row " + std::to_string(row));
    }
  }
  return points;
}

void save_probes_csv(const std::string& path, const std::vector<ProbePoint>& points) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_probes_csv(out, points);
}

std::vector<ProbePoint> load_probes_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  return read_probes_csv(in);
}

}  // namespace frost::profiler
