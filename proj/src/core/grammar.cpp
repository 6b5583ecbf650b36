#include "odd/grammar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "odd/errors.hpp"

namespace odd::grammar {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

bool Cursor::consume(std::string_view token) {
  if (rest().substr(0, token.size()) != token) return false;
  pos_ += token.size();
  return true;
}

void Cursor::expect(std::string_view token) {
  if (!consume(token)) fail("expected '" + std::string(token) + "'");
}

std::string Cursor::peek_identifier() const {
  std::size_t p = pos_;
  if (p >= text_.size() || !ident_start(text_[p])) return {};
  while (p < text_.size() && ident_char(text_[p])) ++p;
  return std::string(text_.substr(pos_, p - pos_));
}

std::string Cursor::identifier() {
  std::string id = peek_identifier();
  if (id.empty()) fail("expected identifier");
  pos_ += id.size();
  return id;
}

std::string Cursor::peek_item_key(bool leading_comma) const {
  std::size_t p = pos_;
  if (leading_comma) {
    if (p >= text_.size() || text_[p] != ',') return {};
    ++p;
  }
  const std::size_t start = p;
  if (p >= text_.size() || !ident_start(text_[p])) return {};
  while (p < text_.size() && ident_char(text_[p])) ++p;
  if (p >= text_.size() || text_[p] != '=') return {};
  return std::string(text_.substr(start, p - start));
}

std::string Cursor::value() {
  const std::size_t start = pos_;
  int depth = 0;
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (c == '[') ++depth;
    if (c == ']') {
      if (depth == 0) break;
      --depth;
    }
    if (c == ',' && depth == 0) break;
    ++pos_;
  }
  if (pos_ == start) fail("expected value");
  return std::string(text_.substr(start, pos_ - start));
}

double Cursor::number() {
  const std::size_t start = pos_;
  const std::string v = value();
  try {
    return parse_number(v);
  } catch (const ParseError&) {
    pos_ = start;
    fail("expected number, got '" + v + "'");
  }
}

void Cursor::fail(const std::string& what) const {
  throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
}

double parse_number(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) throw ParseError("not a number: '" + std::string(text) + "'");
  return v;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace odd::grammar
