#include "escom/bench/config.hpp"

#include <algorithm>
#include <fstream>

#include "escom/error.hpp"

namespace escom::bench {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigEntries parse_config(std::istream& in) {
  ConfigEntries out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      fail(Errc::bad_config,
           "config line " + std::to_string(line_no) + " has no '='");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      fail(Errc::bad_config,
           "config line " + std::to_string(line_no) + " has an empty key");
    }
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& kv) { return kv.first == key; });
    if (it != out.end()) {
      it->second = std::move(value);
    } else {
      out.emplace_back(std::move(key), std::move(value));
    }
  }
  return out;
}

ConfigEntries load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open config '" + path + "'");
  return parse_config(in);
}

}  // namespace escom::bench
