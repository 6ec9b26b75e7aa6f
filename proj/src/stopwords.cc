#include <utility>

#include "advtext/text.h"
#include "line_reader.h"

namespace advtext {

StopWords::StopWords(std::unordered_set<std::string> words) {
  for (const auto& w : words) words_.insert(to_lower(w));
}

StopWords StopWords::load(const std::filesystem::path& path) {
  return load_union({path});
}

StopWords StopWords::load_union(const std::vector<std::filesystem::path>& paths) {
  StopWords out;
  for (const auto& path : paths) {
    auto in = internal::open_for_read(path, "stop-word list");
    std::string line;
    while (internal::read_line(in, line)) {
      auto body = line.substr(0, line.find('#'));
      auto word = internal::trim(body);
      if (!word.empty()) out.words_.insert(to_lower(word));
    }
  }
  return out;
}

bool StopWords::contains(std::string_view word) const {
  return words_.count(to_lower(word)) != 0;
}

}  // namespace advtext
