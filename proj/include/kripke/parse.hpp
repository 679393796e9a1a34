#pragma once

// Recursive-descent parser for the ASCII formula grammar:
//
//   atoms NAME(v,...) or bare NAME (arity 0); constants bot, top;
//   unary ~, box, dia (tightest); quantifiers "forall v."/"exists v."
//   scoping to the end of input or the closing paren; & over | over ->
//   (right-associative); parentheses free.

#include <cctype>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kripke/formula.hpp"

namespace kripke {

class ParseError : public std::runtime_error {
 public:
  std::size_t position;
  ParseError(std::size_t pos, const std::string& what)
      : std::runtime_error("parse error at " + std::to_string(pos) + ": " + what),
        position(pos) {}
};

namespace detail {

struct Token {
  enum Kind { Name, Keyword, LParen, RParen, Comma, Dot, AndSym, OrSym, ImpSym, NegSym, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

inline bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(std::string_view text) {
  static const std::set<std::string> keywords = {"bot", "top", "box", "dia", "forall", "exists"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t pos = i;
    if (name_start(c)) {
      std::size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      out.push_back({keywords.count(word) ? Token::Keyword : Token::Name, word, pos});
      i = j;
      continue;
    }
    switch (c) {
      case '(': out.push_back({Token::LParen, "(", pos}); ++i; break;
      case ')': out.push_back({Token::RParen, ")", pos}); ++i; break;
      case ',': out.push_back({Token::Comma, ",", pos}); ++i; break;
      case '.': out.push_back({Token::Dot, ".", pos}); ++i; break;
      case '&': out.push_back({Token::AndSym, "&", pos}); ++i; break;
      case '|': out.push_back({Token::OrSym, "|", pos}); ++i; break;
      case '~': out.push_back({Token::NegSym, "~", pos}); ++i; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Token::ImpSym, "->", pos});
          i += 2;
        } else {
          throw ParseError(pos, "unexpected '-' (did you mean '->'?)");
        }
        break;
      default:
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::End, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  FormulaPtr run() {
    FormulaPtr f = imp_level();
    if (peek().kind != Token::End) throw ParseError(peek().pos, "trailing input");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  std::map<std::string, std::size_t> arities_;
  std::vector<std::string> bound_;

  const Token& peek() const { return toks_[at_]; }
  Token take() { return toks_[at_++]; }

  bool is_bound(const std::string& name) const {
    for (const auto& b : bound_)
      if (b == name) return true;
    return false;
  }

  FormulaPtr imp_level() {
    FormulaPtr lhs = or_level();
    if (peek().kind == Token::ImpSym) {
      take();
      return imp(lhs, imp_level());  // right-associative
    }
    return lhs;
  }

  FormulaPtr or_level() {
    FormulaPtr lhs = and_level();
    if (peek().kind == Token::OrSym) {
      take();
      return disj(lhs, or_level());
    }
    return lhs;
  }

  FormulaPtr and_level() {
    FormulaPtr lhs = unary_level();
    if (peek().kind == Token::AndSym) {
      take();
      return conj(lhs, and_level());
    }
    return lhs;
  }

  FormulaPtr unary_level() {
    const Token& t = peek();
    if (t.kind == Token::NegSym) { take(); return neg(unary_level()); }
    if (t.kind == Token::Keyword && t.text == "box") { take(); return box(unary_level()); }
    if (t.kind == Token::Keyword && t.text == "dia") { take(); return dia(unary_level()); }
    return primary();
  }

  FormulaPtr primary() {
    Token t = take();
    switch (t.kind) {
      case Token::LParen: {
        FormulaPtr f = imp_level();
        if (peek().kind != Token::RParen) throw ParseError(peek().pos, "expected ')'");
        take();
        return f;
      }
      case Token::Keyword: {
        if (t.text == "bot") return bot();
        if (t.text == "top") return top();
        if (t.text == "forall" || t.text == "exists") {
          Token v = take();
          if (v.kind != Token::Name)
            throw ParseError(v.pos, "expected a variable after '" + t.text + "'");
          Token dot = take();
          if (dot.kind != Token::Dot) throw ParseError(dot.pos, "expected '.' after quantified variable");
          bound_.push_back(v.text);
          FormulaPtr body = imp_level();  // scope to end or closing paren
          bound_.pop_back();
          return t.text == "forall" ? forall(Variable{v.text}, body)
                                    : exists(Variable{v.text}, body);
        }
        throw ParseError(t.pos, "unexpected keyword '" + t.text + "'");
      }
      case Token::Name: {
        if (peek().kind == Token::LParen) {
          take();
          std::vector<Variable> args;
          if (peek().kind != Token::RParen) {
            while (true) {
              Token a = take();
              if (a.kind != Token::Name) throw ParseError(a.pos, "expected a variable argument");
              args.emplace_back(a.text);
              if (peek().kind == Token::Comma) { take(); continue; }
              break;
            }
          }
          if (peek().kind != Token::RParen) throw ParseError(peek().pos, "expected ')' after arguments");
          take();
          check_arity(t, args.size());
          return atom(t.text, std::move(args));
        }
        if (is_bound(t.text))
          throw ParseError(t.pos, "variable '" + t.text + "' used as a propositional atom");
        check_arity(t, 0);
        return atom(t.text);
      }
      default:
        throw ParseError(t.pos, "expected a formula");
    }
  }

  void check_arity(const Token& t, std::size_t arity) {
    auto [it, fresh] = arities_.try_emplace(t.text, arity);
    if (!fresh && it->second != arity)
      throw ParseError(t.pos, "letter '" + t.text + "' used with arity " + std::to_string(arity) +
                                  " but previously with " + std::to_string(it->second));
  }
};

}  // namespace detail

inline FormulaPtr parse(std::string_view text) { return detail::Parser(text).run(); }

}  // namespace kripke
