#pragma once

#include <iosfwd>
#include <string>

#include "frost/hal/power.hpp"

namespace frost::energy {

// CSV with header `t_s,domain,watts`. Values are written with enough digits
// to read back bit-exactly.
void write_trace_csv(std::ostream& out, const hal::PowerTrace& trace);
hal::PowerTrace read_trace_csv(std::istream& in);

void save_trace_csv(const std::string& path, const hal::PowerTrace& trace);
hal::PowerTrace load_trace_csv(const std::string& path);

}  // namespace frost::energy
