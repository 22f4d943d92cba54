#pragma once

// Minimal CSV reader: comma separator, double-quote quoting ("" escapes a
// quote), newlines allowed inside quoted fields, CRLF or LF line endings.

#include <istream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "apvnet/error.hpp"

namespace apvnet::csv {

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Reads the next record. Returns nullopt at end of input.
  std::optional<std::vector<std::string>> next() {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool quoted_field = false;
    bool any = false;
    int c;
    while ((c = in_.get()) != std::char_traits<char>::eof()) {
      any = true;
      const char ch = static_cast<char>(c);
      if (in_quotes) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
        continue;
      }
      if (ch == '"') {
        if (!field.empty() || quoted_field) {
          throw Error(ErrorCode::MalformedCsv,
                      "stray quote in unquoted field near line " + std::to_string(line_));
        }
        in_quotes = true;
        quoted_field = true;
      } else if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
        quoted_field = false;
      } else if (ch == '\n') {
        ++line_;
        if (!field.empty() && field.back() == '\r' && !quoted_field) field.pop_back();
        fields.push_back(std::move(field));
        return fields;
      } else if (quoted_field) {
        if (ch != '\r') {
          throw Error(ErrorCode::MalformedCsv,
                      "text after closing quote near line " + std::to_string(line_));
        }
      } else {
        field.push_back(ch);
      }
    }
    if (in_quotes) {
      throw Error(ErrorCode::MalformedCsv, "unbalanced quote at end of input");
    }
    if (!any) return std::nullopt;
    if (!field.empty() && field.back() == '\r' && !quoted_field) field.pop_back();
    fields.push_back(std::move(field));
    return fields;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

inline std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace apvnet::csv
