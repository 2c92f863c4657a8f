#include "frost/energy/trace_csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "frost/error.hpp"

namespace frost::energy {
namespace {

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const hal::PowerTrace& trace) {
  out << "t_s,domain,watts\n";
  for (const auto& s : trace.samples()) {
    out << exact(s.t) << ',' << hal::to_string(s.domain) << ',' << exact(s.watts) << '\n';
  }
}

hal::PowerTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t_s,domain,watts", 0) != 0) {
    throw InvalidArgument("trace CSV must start with header t_s,domain,watts");
  }
  hal::PowerTrace trace;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string t, domain, watts;
    if (!std::getline(ss, t, ',') || !std::getline(ss, domain, ',') || !std::getline(ss, watts)) {
      throw InvalidArgument("malformed trace CSV row " + std::to_string(row));
    }
    try {
      trace.append({std::stod(t), std::stod(watts), hal::parse_domain(domain)});
    } catch (const std::logic_error&) {
      throw InvalidArgument("malformed number in trace CSV row " + std::to_string(row));
    }
  }
  return trace;
}

void save_trace_csv(const std::string& path, const hal::PowerTrace& trace) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_trace_csv(out, trace);
}

hal::PowerTrace load_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  return read_trace_csv(in);
}

}  // namespace frost::energy
