#pragma once

#include <string>
#include <string_view>

namespace frost::cli {

// fig2: energy, time, power and utilization per phase
// fig4: energy and time against the cap, one row per probe
// fig5: decision per delay exponent
// fig6: energy saving against time increase per workload
// summary: one line
enum class RenderFormat { fig2, fig4, fig5, fig6, summary };

// Throws UnknownFormat.
RenderFormat parse_format(std::string_view name);

// Renders a run or batch report document as CSV (or the summary line).
std::string render(const std::string& report_json, RenderFormat format);

}  // namespace frost::cli
