#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cyclespan {

// Flat "key = value" files. "[name]" starts a section; entries before the
// first header belong to the unnamed section "". '#' and ';' start comments,
// and a value may be wrapped in double quotes.

struct ConfigEntry {
  std::string section;
  std::string key;  // '_' normalized to '-'
  std::string value;
  std::size_t line = 0;
};

struct ConfigFile {
  std::string source;
  std::vector<ConfigEntry> entries;
};

ConfigFile parse_config(std::istream& in, const std::string& source = "<config>");
ConfigFile read_config(const std::filesystem::path& path);

}  // namespace cyclespan
