// Shared tokenizer for the surface and core syntaxes. Identifiers follow the
// Prolog convention: a leading capital or underscore marks a variable.
// Comments run from '%' to end of line.

#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "syntax.hpp"

namespace extensia {

struct Token {
  enum class Kind { Name, Variable, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  // `symbols` must list multi-character symbols before their prefixes.
  Lexer(const std::string& input, std::vector<std::string> symbols)
      : input_(input), symbols_(std::move(symbols)) {
    next();
  }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    next();
    return t;
  }

  bool atSymbol(const std::string& s) const {
    return tok_.kind == Token::Kind::Symbol && tok_.text == s;
  }

  bool atName(const std::string& s) const {
    return tok_.kind == Token::Kind::Name && tok_.text == s;
  }

  void expectSymbol(const std::string& s) {
    if (!atSymbol(s)) fail("expected '" + s + "'");
    next();
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(tok_.pos, message + " (found " + describe(tok_) + ")");
  }

 private:
  static std::string describe(const Token& t) {
    if (t.kind == Token::Kind::End) return "end of input";
    return "'" + t.text + "'";
  }

  void skipBlank() {
    while (offset_ < input_.size()) {
      char c = input_[offset_];
      if (c == '%') {
        while (offset_ < input_.size() && input_[offset_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (input_[offset_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++offset_;
  }

  void next() {
    skipBlank();
    tok_.pos = {line_, column_};
    if (offset_ >= input_.size()) {
      tok_ = Token{Token::Kind::End, "", tok_.pos};
      return;
    }
    char c = input_[offset_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (offset_ < input_.size()) {
        char d = input_[offset_];
        if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_') break;
        name.push_back(d);
        advance();
      }
      bool variable = std::isupper(static_cast<unsigned char>(name[0])) ||
                      name[0] == '_';
      tok_.kind = variable ? Token::Kind::Variable : Token::Kind::Name;
      tok_.text = std::move(name);
      return;
    }
    for (const std::string& s : symbols_) {
      if (input_.compare(offset_, s.size(), s) == 0) {
        tok_.kind = Token::Kind::Symbol;
        tok_.text = s;
        for (size_t i = 0; i < s.size(); ++i) advance();
        return;
      }
    }
    throw SyntaxError(tok_.pos, std::string("unexpected character '") + c + "'");
  }

  const std::string& input_;
  std::vector<std::string> symbols_;
  size_t offset_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token tok_;
};

}  // namespace extensia
