// Shared plumbing for the line-based text formats.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coarsekit {

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what);
  // 1-based; 0 when the error is not tied to a line (e.g. unexpected EOF).
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Yields non-blank lines with '#' comments and surrounding blanks removed.
class LineReader {
 public:
  struct Line {
    std::size_t number = 0;
    std::string text;
  };

  explicit LineReader(std::string_view text);

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const;
  Line next();
  // Consumes a line that must equal `text` exactly.
  void expect(std::string_view text);
  // Line number for errors at the current position.
  std::size_t current_line() const;

  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_words(std::string_view s);
// Parses a non-negative decimal integer; throws FormatError tagged with line.
std::size_t parse_count(std::string_view token, std::size_t line);
// "2,3,4" -> {2, 3, 4}; throws std::invalid_argument.
std::vector<std::size_t> parse_count_list(std::string_view text);

// Consumes a line of the form `<key> <count>`.
std::size_t read_keyed_count(LineReader& in, std::string_view key);

// If `line` starts with `prefix`, stores the remainder in `rest`.
bool strip_prefix(std::string_view line, std::string_view prefix, std::string_view& rest);

}  // namespace coarsekit
