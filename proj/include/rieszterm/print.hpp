// Canonical DSL rendering.  print() and parse() round-trip structurally:
// parse(print(t), sig) == t for every well-formed t in sig.
#pragma once

#include <string>

#include "rieszterm/term.hpp"

namespace rieszterm {

namespace detail {

// Binding strength used for parenthesisation.  tsup binds loosest (its schema
// tail is greedy), then +, then v, then scale prefixes, then atoms.
inline int precedence(const Term& t) {
  switch (t.kind()) {
    case NodeKind::TruncSup: return 0;
    case NodeKind::Add: return 1;
    case NodeKind::Join: return 2;
    case NodeKind::Scale: return 3;
    default: return 4;
  }
}

inline void print_term(const Term& t, int min_prec, std::string& out);

inline void print_schema(const SequenceSchema& s, std::string& out) {
  if (s.is_affine()) {
    out += "n*(";
    print_term(s.u, 0, out);
    out += ")";
    if (s.v.kind() != NodeKind::Zero) {
      out += " + ";
      print_term(s.v, 1, out);
    }
    return;
  }
  out += "mono(";
  out += s.direction == Direction::Increasing ? "inc" : "dec";
  out += ", " + std::to_string(s.hint) + ", ";
  if (s.is_finite_list()) {
    out += "[";
    bool first = true;
    for (const Term& it : s.items) {
      if (!first) out += "; ";
      first = false;
      print_term(it, 0, out);
    }
    out += "]";
  } else {
    print_term(s.body, 0, out);
  }
  out += ")";
}

inline void print_term(const Term& t, int min_prec, std::string& out) {
  bool wrap = precedence(t) < min_prec;
  if (wrap) out += "(";
  switch (t.kind()) {
    case NodeKind::Proj:
      out += "x" + std::to_string(t.var());
      break;
    case NodeKind::Zero:
      out += "zero";
      break;
    case NodeKind::One:
      out += "one";
      break;
    case NodeKind::Add:
      print_term(t.left(), 1, out);
      out += " + ";
      print_term(t.right(), 2, out);
      break;
    case NodeKind::Join:
      print_term(t.left(), 2, out);
      out += " v ";
      print_term(t.right(), 3, out);
      break;
    case NodeKind::Scale:
      if (t.coeff().is_constant())
        out += to_string(t.coeff().constant_value());
      else
        out += "{" + t.coeff().str() + "}";
      out += "*";
      print_term(t.child(), 3, out);
      break;
    case NodeKind::Trunc:
      out += "trunc(";
      print_term(t.child(), 0, out);
      out += ")";
      break;
    case NodeKind::Square:
      out += "sq(";
      print_term(t.child(), 0, out);
      out += ")";
      break;
    case NodeKind::AbsPow:
      out += "abspow[" + to_string(t.exponent()) + "](";
      print_term(t.child(), 0, out);
      out += ")";
      break;
    case NodeKind::TruncSup:
      out += "tsup[n] cap=";
      print_term(t.cap(), 1, out);  // parenthesises a nested bare tsup
      out += " : ";
      print_schema(t.schema(), out);
      break;
  }
  if (wrap) out += ")";
}

}  // namespace detail

inline std::string print(const Term& t) {
  std::string out;
  detail::print_term(t, 0, out);
  return out;
}

}  // namespace rieszterm
