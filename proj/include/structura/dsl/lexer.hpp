#pragma once

// Tokens of the species language. `#` starts a comment running to the end
// of the line. Identifiers are letters, digits, `_` and `'`, not starting
// with a digit or `'`. Integers may carry a leading `-`.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "structura/error.hpp"

namespace structura::dsl {

enum class Tok {
  Ident,
  Int,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Dot,
  DotDot,
  Star,
  At,
  Amp,
  Bar,
  Bang,
  Eq,
  NotEq,
  Arrow,
  DoubleArrow,
  End,
};

inline std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Star: return "'*'";
    case Tok::At: return "'@'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Bang: return "'!'";
    case Tok::Eq: return "'='";
    case Tok::NotEq: return "'!='";
    case Tok::Arrow: return "'->'";
    case Tok::DoubleArrow: return "'<->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t number = 0;
  SourcePosition pos;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  SourcePosition pos;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    }
  };
  auto emit = [&](Tok kind, std::size_t len) {
    out.push_back(Token{kind, std::string(src.substr(i, len)), 0, pos});
    advance(len);
  };
  auto at = [&](std::size_t k) { return i + k < src.size() ? src[i + k] : '\0'; };

  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (ident_start(c)) {
      std::size_t len = 1;
      while (ident_char(at(len))) ++len;
      emit(Tok::Ident, len);
      continue;
    }
    const bool negative = c == '-' && std::isdigit(static_cast<unsigned char>(at(1)));
    if (std::isdigit(static_cast<unsigned char>(c)) || negative) {
      std::size_t len = negative ? 1 : 0;
      while (std::isdigit(static_cast<unsigned char>(at(len)))) ++len;
      Token t{Tok::Int, std::string(src.substr(i, len)), 0, pos};
      try {
        t.number = std::stoll(t.text);
      } catch (const std::out_of_range&) {
        throw ParseError(ErrorCode::SyntaxError, pos, "integer literal out of range: " + t.text, {"integer"});
      }
      out.push_back(std::move(t));
      advance(len);
      continue;
    }
    switch (c) {
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case '{': emit(Tok::LBrace, 1); continue;
      case '}': emit(Tok::RBrace, 1); continue;
      case '[': emit(Tok::LBracket, 1); continue;
      case ']': emit(Tok::RBracket, 1); continue;
      case ',': emit(Tok::Comma, 1); continue;
      case ';': emit(Tok::Semi, 1); continue;
      case '*': emit(Tok::Star, 1); continue;
      case '@': emit(Tok::At, 1); continue;
      case '&': emit(Tok::Amp, 1); continue;
      case '|': emit(Tok::Bar, 1); continue;
      case '=': emit(Tok::Eq, 1); continue;
      case '.':
        if (at(1) == '.') {
          emit(Tok::DotDot, 2);
        } else {
          emit(Tok::Dot, 1);
        }
        continue;
      case '!':
        if (at(1) == '=') {
          emit(Tok::NotEq, 2);
        } else {
          emit(Tok::Bang, 1);
        }
        continue;
      case '-':
        if (at(1) == '>') {
          emit(Tok::Arrow, 2);
          continue;
        }
        break;
      case '<':
        if (at(1) == '-' && at(2) == '>') {
          emit(Tok::DoubleArrow, 3);
          continue;
        }
        break;
      default: break;
    }
    throw ParseError(ErrorCode::SyntaxError, pos, std::string("unexpected character '") + c + "'",
                     {"identifier", "integer", "punctuation"});
  }
  out.push_back(Token{Tok::End, "", 0, pos});
  return out;
}

}  // namespace structura::dsl
