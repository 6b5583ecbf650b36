#pragma once

// Small recursive-descent helpers shared by the spec grammars
// ("jaffard:r=2", "besov:base=...,r=1,p=inf,method=solidlp", ...).

#include <string>
#include <string_view>

namespace odd::grammar {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  std::size_t position() const { return pos_; }
  std::string_view rest() const { return text_.substr(pos_); }

  bool consume(std::string_view token);
  void expect(std::string_view token);
  /// Identifier [A-Za-z_][A-Za-z0-9_]* at the cursor (empty if none); does not consume.
  std::string peek_identifier() const;
  std::string identifier();
  /// Key of the next ",key=" item without consuming it; empty if the next item is not of that form.
  std::string peek_item_key(bool leading_comma) const;
  /// Raw value up to the next ',' or ']' at bracket depth zero.
  std::string value();
  double number();
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

double parse_number(std::string_view text);
/// Shortest representation that parses back to the same double; "inf" for infinity.
std::string format_number(double v);

}  // namespace odd::grammar
