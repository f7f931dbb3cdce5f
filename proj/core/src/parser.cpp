#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "incl/errors.hpp"
#include "incl/formula.hpp"

namespace incl {
namespace {

enum class Tok { LParen, RParen, Comma, And, Or, Bang, Eq, Subset, Dot, Ident, Const, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", i++}); continue;
      case ')': out.push_back({Tok::RParen, ")", i++}); continue;
      case ',': out.push_back({Tok::Comma, ",", i++}); continue;
      case '&': out.push_back({Tok::And, "&", i++}); continue;
      case '|': out.push_back({Tok::Or, "|", i++}); continue;
      case '!': out.push_back({Tok::Bang, "!", i++}); continue;
      case '=': out.push_back({Tok::Eq, "=", i++}); continue;
      case '.': out.push_back({Tok::Dot, ".", i++}); continue;
      case '<':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({Tok::Subset, "<=", i});
          i += 2;
          continue;
        }
        throw SyntaxError("expected '<=' after '<'", i);
      case '\'': {
        std::size_t close = s.find('\'', i + 1);
        if (close == std::string_view::npos) throw SyntaxError("unterminated constant", i);
        if (close == i + 1) throw SyntaxError("empty constant", i);
        out.push_back({Tok::Const, std::string(s.substr(i + 1, close - i - 1)), start});
        i = close + 1;
        continue;
      }
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_variable_name(const std::string& t) {
  return !t.empty() && std::islower(static_cast<unsigned char>(t[0]));
}

bool is_relation_name(const std::string& t) {
  return !t.empty() && std::isupper(static_cast<unsigned char>(t[0]));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula parse() {
    Formula f = disjunction();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, peek().pos); }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Or)) f = Formula::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conj(f, unary());
    return f;
  }

  bool at_quantifier() const {
    const Token& t = peek();
    return t.kind == Tok::Ident && (t.text == "E" || t.text == "A") &&
           peek(1).kind == Tok::Ident && is_variable_name(peek(1).text) && peek(2).kind == Tok::Dot;
  }

  Formula unary() {
    if (at_quantifier()) {
      bool existential = next().text == "E";
      std::string var = next().text;
      next();
      Formula body = disjunction();
      return existential ? Formula::exists(var, body) : Formula::forall(var, body);
    }
    if (accept(Tok::LParen)) {
      Formula f = disjunction();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (peek().kind == Tok::Bang) {
      next();
      if (peek().kind == Tok::LParen) fail("negation is only allowed on atomic formulas");
      if (at_quantifier()) fail("negation is only allowed on atomic formulas");
      return atom(true);
    }
    return atom(false);
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Const) return Term::constant(next().text);
    if (t.kind == Tok::Ident && is_variable_name(t.text)) return Term::var(next().text);
    fail("expected a variable or constant");
  }

  std::vector<std::string> variable_list() {
    std::vector<std::string> out;
    do {
      const Token& t = peek();
      if (t.kind != Tok::Ident || !is_variable_name(t.text)) fail("expected a variable");
      out.push_back(next().text);
    } while (accept(Tok::Comma));
    return out;
  }

  Formula atom(bool negated) {
    const Token& t = peek();
    if (t.kind == Tok::Ident && is_relation_name(t.text)) {
      std::string name = next().text;
      expect(Tok::LParen, "'(' after relation name");
      std::vector<Term> args;
      if (peek().kind != Tok::RParen) {
        do {
          args.push_back(term());
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen, "')'");
      return negated ? Formula::neg_rel(name, std::move(args)) : Formula::rel(name, std::move(args));
    }
    if (t.kind == Tok::Ident && is_variable_name(t.text) &&
        (peek(1).kind == Tok::Comma || peek(1).kind == Tok::Subset)) {
      if (negated) fail("negation is only allowed on equality and relational atoms");
      std::vector<std::string> lhs = variable_list();
      expect(Tok::Subset, "'<='");
      std::vector<std::string> rhs = variable_list();
      return Formula::inclusion(std::move(lhs), std::move(rhs));
    }
    Term lhs = term();
    expect(Tok::Eq, "'='");
    Term rhs = term();
    return negated ? Formula::neg_eq(std::move(lhs), std::move(rhs))
                   : Formula::eq(std::move(lhs), std::move(rhs));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace incl
