#include "frost/hal/shell.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <regex>

namespace frost::hal {
namespace {

const std::regex& number_pattern() {
  static const std::regex re(R"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)");
  return re;
}

}  // namespace

ShellResult run_shell(const std::string& command) {
  ShellResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  const int status = ::pclose(pipe);
  if (status != -1 && WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  }
  return result;
}

std::string expand_template(std::string_view templ,
                            const std::map<std::string, std::string>& values) {
  std::string out(templ);
  for (const auto& [key, value] : values) {
    const std::string token = "{" + key + "}";
    for (std::size_t pos = out.find(token); pos != std::string::npos;
         pos = out.find(token, pos + value.size())) {
      out.replace(pos, token.size(), value);
    }
  }
  return out;
}

std::optional<double> first_number_on_first_line(std::string_view text) {
  const std::string line(text.substr(0, text.find('\n')));
  std::smatch match;
  if (!std::regex_search(line, match, number_pattern())) return std::nullopt;
  return std::stod(match.str());
}

std::optional<double> last_number(std::string_view text) {
  const std::string s(text);
  std::optional<double> last;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), number_pattern());
       it != std::sregex_iterator(); ++it) {
    last = std::stod(it->str());
  }
  return last;
}

}  // namespace frost::hal
