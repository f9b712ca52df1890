#include "cyclespan/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "cyclespan/errors.hpp"

namespace cyclespan {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Drops a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (!quoted && (s[i] == '#' || s[i] == ';')) return s.substr(0, i);
  }
  return s;
}

}  // namespace

ConfigFile parse_config(std::istream& in, const std::string& source) {
  ConfigFile file;
  file.source = source;
  std::string section;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(strip_comment(raw));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) throw ParseError(line, "malformed section header '" + text + "'");
      section = trim(text.substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value', got '" + text + "'");
    ConfigEntry entry{section, trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
    if (entry.key.empty()) throw ParseError(line, "empty key");
    std::replace(entry.key.begin(), entry.key.end(), '_', '-');
    if (entry.value.size() >= 2 && entry.value.front() == '"' && entry.value.back() == '"') {
      entry.value = entry.value.substr(1, entry.value.size() - 2);
    }
    file.entries.push_back(std::move(entry));
  }
  return file;
}

ConfigFile read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_config(in, path.string());
}

}  // namespace cyclespan
