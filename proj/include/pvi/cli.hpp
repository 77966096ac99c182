#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pvi/json_io.hpp"

namespace pvi {

enum class OutputFormat { Json, Csv, Pretty };

OutputFormat parse_output_format(const std::string& s);

/// Renders a result. CSV tabulates the array under table_key when given,
/// otherwise writes top-level key,value rows.
std::string render(const Json& doc, OutputFormat fmt, const std::string& table_key = "");

/// key=value lines; '#' starts a comment. Throws std::runtime_error on an
/// unreadable file or a line without '='.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
}  // namespace exit_code

/// Runs one command line (without the program name). Config-file values
/// are applied first and explicit flags override them.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvi
