#ifndef ADVTEXT_SRC_LINE_READER_H_
#define ADVTEXT_SRC_LINE_READER_H_

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "advtext/errors.h"

namespace advtext::internal {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::ifstream open_for_read(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + std::string(what) + " '" + path.string() + "'");
  }
  return in;
}

// Strips a trailing '\r' left by CRLF files.
inline bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace advtext::internal

#endif  // ADVTEXT_SRC_LINE_READER_H_
