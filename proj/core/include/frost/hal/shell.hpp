#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace frost::hal {

struct ShellResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

// Runs a command through /bin/sh and captures its standard output.
ShellResult run_shell(const std::string& command);

// Replaces every "{key}" in a template. Unknown placeholders are left alone.
std::string expand_template(std::string_view templ,
                            const std::map<std::string, std::string>& values);

// First real number on the first line of text, if any.
std::optional<double> first_number_on_first_line(std::string_view text);

// Last real number appearing anywhere in text, if any.
std::optional<double> last_number(std::string_view text);

}  // namespace frost::hal
