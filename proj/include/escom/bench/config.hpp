#pragma once

// Flat key=value configuration text. Blank lines and lines starting with '#'
// are ignored; whitespace around keys and values is trimmed; a repeated key
// keeps its last value.

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace escom::bench {

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Throws Errc::bad_config naming the offending line.
ConfigEntries parse_config(std::istream& in);
ConfigEntries load_config(const std::string& path);

}  // namespace escom::bench
