#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "frost/profiler/schedule.hpp"

namespace frost::profiler {

// `limit,energy_j,duration_s,samples,energy_per_sample_j,throughput_sps`
void write_probes_csv(std::ostream& out, const std::vector<ProbePoint>& points);
std::vector<ProbePoint> read_probes_csv(std::istream& in);

void save_probes_csv(const std::string& path, const std::vector<ProbePoint>& points);
std::vector<ProbePoint> load_probes_csv(const std::string& path);

}  // namespace frost::profiler
