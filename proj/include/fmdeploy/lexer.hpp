// Copyright 2026 The fmdeploy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FMDEPLOY_LEXER_HPP
#define FMDEPLOY_LEXER_HPP

#include <map>
#include <string>
#include <string_view>

#include "fmdeploy/diagnostics.hpp"

namespace fmdeploy {

enum class TokenKind {
  identifier,
  integer,
  string_literal,
  lbrace,
  rbrace,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  semicolon,
  equals,
  dotdot,
  kw_model,
  kw_class,
  kw_embedded,
  kw_elastic,
  kw_mandatory,
  kw_optional,
  kw_xor,
  kw_or,
  kw_constraints,
  kw_implies,
  kw_excludes,
  kw_deploy,
  kw_hostedby,
  kw_colocated,
  kw_separated,
  kw_as,
  end_of_input,
  bad,
};

struct Token {
  TokenKind kind = TokenKind::end_of_input;
  std::string text;
  long long value = 0;  // integer tokens
  SourceSpan span;

  std::string describe() const {
    switch (kind) {
      case TokenKind::identifier: return "identifier '" + text + "'";
      case TokenKind::integer: return "integer " + text;
      case TokenKind::string_literal: return "string \"" + text + "\"";
      case TokenKind::end_of_input: return "end of input";
      case TokenKind::bad: return "invalid character '" + text + "'";
      default: return "'" + text + "'";
    }
  }
};

/// Byte-oriented scanner for the model and deployment-spec grammars.
/// Whitespace-insensitive; `#` starts a line comment. Keywords are reserved.
class Lexer {
 public:
  Lexer(std::string_view source, std::string file)
      : source_(source), file_(std::move(file)) {}

  Token next() {
    skip_blank();
    Token tok;
    tok.span = here();
    if (pos_ >= source_.size()) {
      tok.kind = TokenKind::end_of_input;
      return tok;
    }
    const char c = source_[pos_];
    if (is_ident_start(c)) return lex_word(tok);
    if (c >= '0' && c <= '9') return lex_int(tok);
    if (c == '"') return lex_string(tok);
    switch (c) {
      case '{': return punct(tok, TokenKind::lbrace);
      case '}': return punct(tok, TokenKind::rbrace);
      case '(': return punct(tok, TokenKind::lparen);
      case ')': return punct(tok, TokenKind::rparen);
      case '[': return punct(tok, TokenKind::lbracket);
      case ']': return punct(tok, TokenKind::rbracket);
      case ',': return punct(tok, TokenKind::comma);
      case ';': return punct(tok, TokenKind::semicolon);
      case '=': return punct(tok, TokenKind::equals);
      case '.':
        if (pos_ + 1 < source_.size() && source_[pos_ + 1] == '.') {
          tok.kind = TokenKind::dotdot;
          tok.text = "..";
          advance();
          advance();
          return tok;
        }
        break;
      default: break;
    }
    tok.kind = TokenKind::bad;
    tok.text = std::string(1, c);
    advance();
    return tok;
  }

 private:
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
  }

  SourceSpan here() const { return SourceSpan{file_, line_, column_}; }

  void advance() {
    if (pos_ >= source_.size()) return;
    if (source_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < source_.size()) {
      const char c = source_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < source_.size() && source_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token punct(Token tok, TokenKind kind) {
    tok.kind = kind;
    tok.text = std::string(1, source_[pos_]);
    advance();
    return tok;
  }

  Token lex_word(Token tok) {
    std::string word;
    while (pos_ < source_.size() && is_ident_char(source_[pos_])) {
      word += source_[pos_];
      advance();
    }
    static const std::map<std::string, TokenKind> keywords = {
        {"model", TokenKind::kw_model},         {"class", TokenKind::kw_class},
        {"embedded", TokenKind::kw_embedded},   {"elastic", TokenKind::kw_elastic},
        {"mandatory", TokenKind::kw_mandatory}, {"optional", TokenKind::kw_optional},
        {"xor", TokenKind::kw_xor},             {"or", TokenKind::kw_or},
        {"constraints", TokenKind::kw_constraints},
        {"implies", TokenKind::kw_implies},     {"excludes", TokenKind::kw_excludes},
        {"deploy", TokenKind::kw_deploy},       {"hostedby", TokenKind::kw_hostedby},
        {"colocated", TokenKind::kw_colocated}, {"separated", TokenKind::kw_separated},
        {"as", TokenKind::kw_as},
    };
    auto it = keywords.find(word);
    tok.kind = it == keywords.end() ? TokenKind::identifier : it->second;
    tok.text = std::move(word);
    return tok;
  }

  Token lex_int(Token tok) {
    tok.kind = TokenKind::integer;
    bool overflow = false;
    while (pos_ < source_.size() && source_[pos_] >= '0' && source_[pos_] <= '9') {
      tok.text += source_[pos_];
      if (tok.value > 1000000000000LL)
        overflow = true;
      else
        tok.value = tok.value * 10 + (source_[pos_] - '0');
      advance();
    }
    if (overflow) {
      tok.kind = TokenKind::bad;
      tok.text = "number too large";
    }
    return tok;
  }

  Token lex_string(Token tok) {
    advance();  // opening quote
    while (pos_ < source_.size() && source_[pos_] != '"' && source_[pos_] != '\n') {
      tok.text += source_[pos_];
      advance();
    }
    if (pos_ >= source_.size() || source_[pos_] != '"') {
      tok.kind = TokenKind::bad;
      tok.text = "unterminated string";
      return tok;
    }
    advance();  // closing quote
    tok.kind = TokenKind::string_literal;
    return tok;
  }

  std::string_view source_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace fmdeploy

#endif  // FMDEPLOY_LEXER_HPP
