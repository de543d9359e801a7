// Recursive-descent parser for the term DSL.
//
//   term   := "x"INT | "zero" | "one" | RATIONAL "*" term | "{"cexpr"}" "*" term
//           | term "+" term | term "-" term | term "v" term | "-" term
//           | "trunc(" term ")" | "meet(" term "," term ")" | "abs(" term ")"
//           | "pos(" term ")" | "negpart(" term ")"
//           | "sq(" term ")" | "abspow[" RATIONAL "](" term ")"      (ext only)
//           | "tsup[n] cap=" term ":" schema | "(" term ")"
//   schema := "n*(" term ")" ["+" term]
//           | "mono(" ("inc"|"dec") "," INT "," body ")"
//   body   := term | "[" term (";" term)* "]"
//   cexpr  := rational arithmetic over +,-,*,/ and 2^e, plus the index "k"
//
// Binding: scale prefixes > "v" > "+"/"-"; a tsup's schema tail is greedy, so
// a tsup used as an operand must be parenthesised (the printer always does).
// Rational literals accept "3", "-12/7" and exact decimals "0.25".
//
// meet/abs/pos/negpart are construction-time sugar and expand to primitives;
// so does "-" (scaling by -1).  Under the unital signatures, trunc(t) is
// accepted as sugar for the unit form -((-t) v (-one)).
#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "rieszterm/term.hpp"

namespace rieszterm {

namespace detail {

enum class Tok {
  End, LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Plus, Minus, Star, Slash, Caret, Comma, Colon, Semi, Eq,
  Number, Word
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    auto push = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(src.substr(start, len)), start});
      i += len;
    };
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '[': push(Tok::LBracket, 1); continue;
      case ']': push(Tok::RBracket, 1); continue;
      case '{': push(Tok::LBrace, 1); continue;
      case '}': push(Tok::RBrace, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '-': push(Tok::Minus, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '/': push(Tok::Slash, 1); continue;
      case '^': push(Tok::Caret, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case ':': push(Tok::Colon, 1); continue;
      case ';': push(Tok::Semi, 1); continue;
      case '=': push(Tok::Eq, 1); continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        if (j >= src.size() || !std::isdigit(static_cast<unsigned char>(src[j])))
          throw ParseError("expected digits after decimal point", j);
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      push(Tok::Number, j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      push(Tok::Word, j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, Signature sig) : toks_(tokenize(src)), sig_(sig) {}

  Term parse() {
    Term t = expr();
    expect(Tok::End, "end of input");
    validate_index_closed(t);
    validate_signature(t, sig_);
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      next();
      return true;
    }
    return false;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

  bool word_is(const Token& t, const char* w) const {
    return t.kind == Tok::Word && t.text == w;
  }

  // NUMBER ["/" NUMBER] as one rational literal (decimals handled by the lexer).
  Rational rational_literal(bool negative) {
    const Token& n = expect(Tok::Number, "a rational literal");
    Rational r;
    if (n.text.find('.') == std::string::npos && peek().kind == Tok::Slash &&
        peek(1).kind == Tok::Number) {
      next();
      const Token& d = next();
      if (parse_rational(d.text) == 0) throw ParseError("zero denominator", d.pos);
      r = Rational(parse_rational(n.text)) / parse_rational(d.text);
    } else {
      r = parse_rational(n.text, n.pos);
    }
    return negative ? Rational(-r) : r;
  }

  // Unsigned integer literal (schema hints, variable indices come via words).
  unsigned long uint_literal(const char* what) {
    const Token& n = expect(Tok::Number, what);
    if (n.text.find('.') != std::string::npos)
      throw ParseError(std::string(what) + " must be an integer", n.pos);
    return std::stoul(n.text);
  }

  Term expr() {
    Term t = vterm();
    for (;;) {
      if (accept(Tok::Plus))
        t = t_add(std::move(t), vterm());
      else if (accept(Tok::Minus))
        t = t_sub(std::move(t), vterm());
      else
        return t;
    }
  }

  Term vterm() {
    Term t = sterm();
    while (peek().kind == Tok::Word && peek().text == "v") {
      next();
      t = t_join(std::move(t), sterm());
    }
    return t;
  }

  Term sterm() {
    if (peek().kind == Tok::Minus) {
      // "-3/2*t" is a negative scale coefficient; a bare "-t" scales by -1.
      if (peek(1).kind == Tok::Number) {
        next();
        Rational c = rational_literal(true);
        expect(Tok::Star, "'*' after scale coefficient");
        return t_scale(std::move(c), sterm());
      }
      next();
      return t_neg(sterm());
    }
    if (peek().kind == Tok::Number) {
      Rational c = rational_literal(false);
      expect(Tok::Star, "'*' after scale coefficient");
      return t_scale(std::move(c), sterm());
    }
    if (peek().kind == Tok::LBrace) {
      next();
      Coeff c = cexpr();
      expect(Tok::RBrace, "'}' after coefficient expression");
      expect(Tok::Star, "'*' after scale coefficient");
      return t_scale(std::move(c), sterm());
    }
    return atom();
  }

  Term paren_arg() {
    expect(Tok::LParen, "'('");
    Term t = expr();
    expect(Tok::RParen, "')'");
    return t;
  }

  Term atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Term inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Word) fail("expected a term");
    const std::string& w = t.text;
    if (w.size() >= 2 && w[0] == 'x' &&
        std::all_of(w.begin() + 1, w.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      if (w.size() > 10) throw ParseError("variable index too large", t.pos);
      next();
      return t_proj(static_cast<VarIndex>(std::stoul(w.substr(1))));
    }
    if (w == "zero") {
      next();
      return t_zero();
    }
    if (w == "one") {
      next();
      if (sig_ == Signature::Base)
        throw ParseError("`one` is not available in signature t", t.pos);
      return t_one();
    }
    if (w == "trunc") {
      next();
      Term arg = paren_arg();
      // Primitive in the base signature; unit sugar in the unital ones.
      return sig_ == Signature::Base ? t_trunc(std::move(arg))
                                     : t_trunc_via_unit(std::move(arg));
    }
    if (w == "meet") {
      next();
      expect(Tok::LParen, "'('");
      Term a = expr();
      expect(Tok::Comma, "','");
      Term b = expr();
      expect(Tok::RParen, "')'");
      return t_meet(std::move(a), std::move(b));
    }
    if (w == "abs") {
      next();
      return t_abs(paren_arg());
    }
    if (w == "pos") {
      next();
      return t_pos(paren_arg());
    }
    if (w == "negpart") {
      next();
      return t_negpart(paren_arg());
    }
    if (w == "sq") {
      if (sig_ != Signature::Extended)
        throw ParseError("sq is only available in signature ext", t.pos);
      next();
      return t_square(paren_arg());
    }
    if (w == "abspow") {
      if (sig_ != Signature::Extended)
        throw ParseError("abspow is only available in signature ext", t.pos);
      next();
      expect(Tok::LBracket, "'['");
      bool neg = accept(Tok::Minus);
      Rational q = rational_literal(neg);
      expect(Tok::RBracket, "']'");
      if (q <= 0) throw ParseError("abspow exponent must be positive", t.pos);
      return t_abspow(std::move(q), paren_arg());
    }
    if (w == "tsup") {
      next();
      expect(Tok::LBracket, "'['");
      const Token& idx = expect(Tok::Word, "the index symbol n");
      if (idx.text != "n") throw ParseError("tsup index symbol must be n", idx.pos);
      expect(Tok::RBracket, "']'");
      const Token& capw = expect(Tok::Word, "'cap'");
      if (capw.text != "cap") throw ParseError("expected 'cap='", capw.pos);
      expect(Tok::Eq, "'=' after cap");
      Term cap = expr();
      expect(Tok::Colon, "':' before the schema");
      SequenceSchema s = schema();
      return t_trunc_sup(std::move(cap), std::move(s));
    }
    fail("unknown identifier '" + w + "'");
  }

  SequenceSchema schema() {
    const Token& t = peek();
    if (word_is(t, "n")) {
      next();
      expect(Tok::Star, "'*' after n");
      expect(Tok::LParen, "'(' around the affine slope term");
      Term u = expr();
      expect(Tok::RParen, "')'");
      Term v = accept(Tok::Plus) ? expr() : t_zero();
      return affine_schema(std::move(u), std::move(v));
    }
    if (word_is(t, "mono")) {
      next();
      expect(Tok::LParen, "'('");
      const Token& d = expect(Tok::Word, "'inc' or 'dec'");
      Direction dir;
      if (d.text == "inc")
        dir = Direction::Increasing;
      else if (d.text == "dec")
        dir = Direction::Decreasing;
      else
        throw ParseError("expected 'inc' or 'dec'", d.pos);
      expect(Tok::Comma, "','");
      unsigned long hint = uint_literal("stabilization hint");
      if (hint == 0) throw ParseError("stabilization hint must be positive", peek().pos);
      expect(Tok::Comma, "','");
      SequenceSchema s;
      if (accept(Tok::LBracket)) {
        std::vector<Term> items;
        items.push_back(expr());
        while (accept(Tok::Semi)) items.push_back(expr());
        expect(Tok::RBracket, "']'");
        s = monotone_schema(dir, static_cast<unsigned>(hint), std::move(items));
      } else {
        s = monotone_schema(dir, static_cast<unsigned>(hint), expr());
      }
      expect(Tok::RParen, "')'");
      return s;
    }
    fail("expected a schema: n*(...) [+ v] or mono(...)");
  }

  // --- coefficient expressions -------------------------------------------------

  Coeff cexpr() {
    Coeff c = cmul();
    for (;;) {
      if (accept(Tok::Plus))
        c = Coeff::add(c, cmul());
      else if (accept(Tok::Minus))
        c = Coeff::sub(c, cmul());
      else
        return c;
    }
  }

  Coeff cmul() {
    Coeff c = cunary();
    for (;;) {
      if (accept(Tok::Star))
        c = Coeff::mul(c, cunary());
      else if (accept(Tok::Slash))
        c = Coeff::div(c, cunary());
      else
        return c;
    }
  }

  Coeff cunary() {
    if (accept(Tok::Minus)) return Coeff::neg(cunary());
    return catom();
  }

  Coeff catom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Coeff c = cexpr();
      expect(Tok::RParen, "')'");
      return c;
    }
    if (word_is(t, "k")) {
      next();
      return Coeff::index();
    }
    if (t.kind == Tok::Number) {
      // Inside braces '/' is the division operator, so read a single number.
      Rational base = parse_rational(t.text, t.pos);
      next();
      if (accept(Tok::Caret)) {
        if (base != 2) throw ParseError("only base-2 powers are supported", t.pos);
        return Coeff::pow2_of(cunary());
      }
      return Coeff::constant(std::move(base));
    }
    fail("expected a coefficient atom");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature sig_;
};

}  // namespace detail

// Parses DSL text into a term of the given signature.  Throws ParseError on
// malformed input and SignatureViolation when a node is not admitted.
inline Term parse(std::string_view src, Signature sig) {
  return detail::Parser(src, sig).parse();
}

}  // namespace rieszterm
