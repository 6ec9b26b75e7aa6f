#include <algorithm>
#include <fstream>

#include "advtext/errors.h"
#include "advtext/eval.h"
#include "line_reader.h"

namespace advtext {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string sanitize_field(std::string_view s) {
  std::string out(s);
  std::replace_if(out.begin(), out.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return out;
}

}  // namespace

LabeledCorpus LabeledCorpus::parse(std::istream& in, const std::string& source) {
  LabeledCorpus corpus;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::size_t columns = 0;
  while (internal::read_line(in, line)) {
    ++lineno;
    if (internal::trim(line).empty()) continue;
    auto fields = split_tabs(line);
    if (!header_seen) {
      if (fields.size() < 2 || internal::trim(fields[0]) != "label" ||
          internal::trim(fields[1]) != "text" ||
          (fields.size() == 3 && internal::trim(fields[2]) != "premise") || fields.size() > 3) {
        throw ParseError(source, lineno, "expected header 'label<TAB>text[<TAB>premise]'");
      }
      header_seen = true;
      columns = fields.size();
      continue;
    }
    if (fields.size() < 2 || fields.size() > columns) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(columns) + " tab-separated columns, found " +
                           std::to_string(fields.size()));
    }
    LabeledText r;
    r.label = std::string(internal::trim(fields[0]));
    r.text = std::string(internal::trim(fields[1]));
    if (r.label.empty()) throw ParseError(source, lineno, "empty label");
    if (r.text.empty()) throw ParseError(source, lineno, "empty text");
    if (fields.size() == 3 && !internal::trim(fields[2]).empty()) {
      r.premise = std::string(internal::trim(fields[2]));
    }
    corpus.records.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError(source, lineno, "missing header row");
  return corpus;
}

LabeledCorpus LabeledCorpus::load(const std::filesystem::path& path) {
  auto in = internal::open_for_read(path, "corpus");
  return parse(in, path.string());
}

void LabeledCorpus::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write corpus '" + path.string() + "'");
  out << "label\ttext\tpremise\n";
  for (const auto& r : records) {
    out << sanitize_field(r.label) << '\t' << sanitize_field(r.text) << '\t'
        << (r.premise ? sanitize_field(*r.premise) : std::string()) << '\n';
  }
  if (!out) throw IoError("failed writing corpus '" + path.string() + "'");
}

bool LabeledCorpus::has_premises() const {
  return std::any_of(records.begin(), records.end(), [](const auto& r) { return r.premise.has_value(); });
}

}  // namespace advtext
