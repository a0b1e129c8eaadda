#ifndef NRTSS_SRC_LEXER_HPP
#define NRTSS_SRC_LEXER_HPP

#include <cctype>
#include <string>
#include <vector>

#include "nrtss/syntax.hpp"

namespace nrtss::detail {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

// Shared tokenizer for the term grammar and the rule-spec grammar. With
// `line_comments` enabled, `//` starts a comment; '#' is always punctuation
// (the freshness symbol).
class Lexer {
 public:
  explicit Lexer(const std::string& text, bool line_comments = false) {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Token::Kind k, std::string s, int l, int c) {
      toks_.push_back(Token{k, std::move(s), l, c});
    };
    while (i < text.size()) {
      char ch = text[i];
      if (ch == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++col;
        ++i;
        continue;
      }
      if (line_comments && ch == '/' && i + 1 < text.size() &&
          text[i + 1] == '/') {
        while (i < text.size() && text[i] != '\n') ++i;
        continue;
      }
      int l = line, c = col;
      if (ch == '-' && i + 1 < text.size() && text[i + 1] == '>') {
        push(Token::Kind::Punct, "->", l, c);
        i += 2;
        col += 2;
        continue;
      }
      if (std::string("()[]{}*,;:@$\\#").find(ch) != std::string::npos) {
        push(Token::Kind::Punct, std::string(1, ch), l, c);
        ++i;
        ++col;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string s;
        while (i < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[i]))) {
          s += text[i++];
          ++col;
        }
        push(Token::Kind::Int, std::move(s), l, c);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string s;
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) ||
                text[i] == '_')) {
          s += text[i++];
          ++col;
        }
        push(Token::Kind::Ident, std::move(s), l, c);
        continue;
      }
      throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
    }
    toks_.push_back(Token{Token::Kind::End, "", line, col});
  }

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_punct(const std::string& p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }
  bool at_ident(const std::string& s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }
  void expect_punct(const std::string& p) {
    if (!at_punct(p)) fail("expected '" + p + "'");
    next();
  }
  std::string expect_ident(const std::string& what) {
    if (peek().kind != Token::Kind::Ident) fail("expected " + what);
    return next().text;
  }
  unsigned expect_int() {
    if (peek().kind != Token::Kind::Int) fail("expected integer");
    return static_cast<unsigned>(std::stoul(next().text));
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got =
        t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.col);
  }
  bool done() const { return peek().kind == Token::Kind::End; }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// Parses exactly one term from the token stream (defined in syntax.cpp).
RawTerm parse_term_at(Lexer& lx, const TermSyntax& syn);

}  // namespace nrtss::detail

#endif  // NRTSS_SRC_LEXER_HPP
