#include "coarsekit/text_format.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace coarsekit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

FormatError::FormatError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

LineReader::LineReader(std::string_view text) {
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto eol = text.find('\n');
    std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) lines_.push_back({number, std::string(raw)});
  }
}

const LineReader::Line& LineReader::peek() const {
  if (done()) throw FormatError(0, "unexpected end of input");
  return lines_[pos_];
}

LineReader::Line LineReader::next() {
  const Line& l = peek();
  ++pos_;
  return l;
}

void LineReader::expect(std::string_view text) {
  if (done()) throw FormatError(0, "unexpected end of input, expected '" + std::string(text) + "'");
  const Line& l = lines_[pos_];
  if (l.text != text) {
    throw FormatError(l.number, "expected '" + std::string(text) + "', found '" + l.text + "'");
  }
  ++pos_;
}

std::size_t LineReader::current_line() const {
  if (done()) return lines_.empty() ? 0 : lines_.back().number;
  return lines_[pos_].number;
}

void LineReader::fail(const std::string& what) const { throw FormatError(current_line(), what); }

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError(line, "expected a non-negative integer, found '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
  std::vector<std::size_t> out;
  if (trim(text).empty()) return out;
  while (true) {
    auto comma = text.find(',');
    auto tok = trim(text.substr(0, comma));
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("bad list element '" + std::string(tok) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

std::size_t read_keyed_count(LineReader& in, std::string_view key) {
  if (in.done()) throw FormatError(0, "unexpected end of input, expected '" + std::string(key) + " <count>'");
  auto line = in.next();
  auto words = split_words(line.text);
  if (words.size() != 2 || words[0] != key) {
    throw FormatError(line.number, "expected '" + std::string(key) + " <count>'");
  }
  return parse_count(words[1], line.number);
}

bool strip_prefix(std::string_view line, std::string_view prefix, std::string_view& rest) {
  if (line.substr(0, prefix.size()) != prefix) return false;
  rest = trim(line.substr(prefix.size()));
  return true;
}

}  // namespace coarsekit
