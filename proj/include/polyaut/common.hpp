#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyaut {

// Invalid input: parse errors, invariant violations, failed preconditions.
// The CLI maps this to exit code 2.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : error {
  parse_error(int line_no, const std::string& what)
      : error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  int line;
};

namespace detail {

// Shared lexer for all file formats: '#' starts a comment, blank lines are
// skipped, tokens are whitespace-separated. Returns (line number, tokens).
inline std::vector<std::pair<int, std::vector<std::string>>>
tokenize_lines(const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> rows;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) rows.emplace_back(no, std::move(toks));
  }
  return rows;
}

// Sort, label and direction names: [A-Za-z0-9_]+ ("0" is reserved for the
// sink sort and rejected separately).
inline bool name_ok(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace detail

}  // namespace polyaut
