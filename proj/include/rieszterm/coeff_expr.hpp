// Scalar coefficient expressions for scale nodes.  Most coefficients are
// plain rational constants; inside a parametric monotone schema a coefficient
// may also mention the schema index k through a tiny arithmetic language
// (+, -, *, /, unary -, and 2^e with integer e), which is exactly what is
// needed to express threshold ramps like q_k = c*(1 - 2^-(k+1)) and their
// reciprocals.  Constant subexpressions are folded eagerly, so a constant
// coefficient is always represented by a single Const node.
#pragma once

#include <memory>
#include <string>
#include <utility>

#include "rieszterm/errors.hpp"
#include "rieszterm/rational.hpp"

namespace rieszterm {

struct CoeffNode;
using CoeffPtr = std::shared_ptr<const CoeffNode>;

struct CoeffNode {
  enum class Kind { Const, Index, Add, Sub, Mul, Div, Neg, Pow2 };
  Kind kind;
  Rational value;  // Const only
  CoeffPtr a, b;
};

class Coeff {
 public:
  Coeff() : Coeff(constant(Rational(0))) {}

  static Coeff constant(Rational v) {
    return Coeff(make(CoeffNode::Kind::Const, std::move(v), nullptr, nullptr));
  }
  static Coeff index() {
    return Coeff(make(CoeffNode::Kind::Index, Rational(0), nullptr, nullptr));
  }
  static Coeff add(const Coeff& x, const Coeff& y) { return binary(CoeffNode::Kind::Add, x, y); }
  static Coeff sub(const Coeff& x, const Coeff& y) { return binary(CoeffNode::Kind::Sub, x, y); }
  static Coeff mul(const Coeff& x, const Coeff& y) { return binary(CoeffNode::Kind::Mul, x, y); }
  static Coeff div(const Coeff& x, const Coeff& y) {
    if (y.is_constant() && y.constant_value() == 0)
      throw Error("division by zero in coefficient expression");
    return binary(CoeffNode::Kind::Div, x, y);
  }
  static Coeff neg(const Coeff& x) {
    if (x.is_constant()) return constant(-x.constant_value());
    return Coeff(make(CoeffNode::Kind::Neg, Rational(0), x.p_, nullptr));
  }
  // 2^e; e must evaluate to an integer.
  static Coeff pow2_of(const Coeff& e) {
    if (e.is_constant()) {
      const Rational& v = e.constant_value();
      if (!is_integer(v)) throw Error("2^e needs an integer exponent, got " + to_string(v));
      return constant(pow_int(Rational(2), static_cast<long>(num(v))));
    }
    return Coeff(make(CoeffNode::Kind::Pow2, Rational(0), e.p_, nullptr));
  }

  bool is_constant() const { return p_->kind == CoeffNode::Kind::Const; }
  const Rational& constant_value() const {
    if (!is_constant()) throw Error("coefficient is not constant");
    return p_->value;
  }

  bool has_index() const { return has_index(p_); }

  // Value with the schema index bound to kval.
  Rational eval(const Int& kval) const { return eval(p_, kval); }

  bool equals(const Coeff& o) const { return equal(p_, o.p_); }

  std::string str() const { return str(p_); }

 private:
  explicit Coeff(CoeffPtr p) : p_(std::move(p)) {}

  static CoeffPtr make(CoeffNode::Kind k, Rational v, CoeffPtr a, CoeffPtr b) {
    auto n = std::make_shared<CoeffNode>();
    n->kind = k;
    n->value = std::move(v);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  static Coeff binary(CoeffNode::Kind k, const Coeff& x, const Coeff& y) {
    if (x.is_constant() && y.is_constant()) {
      const Rational& a = x.constant_value();
      const Rational& b = y.constant_value();
      switch (k) {
        case CoeffNode::Kind::Add: return constant(a + b);
        case CoeffNode::Kind::Sub: return constant(a - b);
        case CoeffNode::Kind::Mul: return constant(a * b);
        case CoeffNode::Kind::Div: return constant(a / b);
        default: break;
      }
    }
    return Coeff(make(k, Rational(0), x.p_, y.p_));
  }

  static bool has_index(const CoeffPtr& p) {
    switch (p->kind) {
      case CoeffNode::Kind::Const: return false;
      case CoeffNode::Kind::Index: return true;
      default:
        return (p->a && has_index(p->a)) || (p->b && has_index(p->b));
    }
  }

  static Rational eval(const CoeffPtr& p, const Int& kval) {
    switch (p->kind) {
      case CoeffNode::Kind::Const: return p->value;
      case CoeffNode::Kind::Index: return Rational(kval);
      case CoeffNode::Kind::Add: return eval(p->a, kval) + eval(p->b, kval);
      case CoeffNode::Kind::Sub: return eval(p->a, kval) - eval(p->b, kval);
      case CoeffNode::Kind::Mul: return eval(p->a, kval) * eval(p->b, kval);
      case CoeffNode::Kind::Div: {
        Rational d = eval(p->b, kval);
        if (d == 0) throw EvalError("coefficient divides by zero at index " + kval.str());
        return eval(p->a, kval) / d;
      }
      case CoeffNode::Kind::Neg: return -eval(p->a, kval);
      case CoeffNode::Kind::Pow2: {
        Rational e = eval(p->a, kval);
        if (!is_integer(e)) throw EvalError("2^e exponent is not an integer at index " + kval.str());
        return pow_int(Rational(2), static_cast<long>(num(e)));
      }
    }
    throw Error("unreachable coefficient kind");
  }

  static bool equal(const CoeffPtr& x, const CoeffPtr& y) {
    if (x == y) return true;
    if (x->kind != y->kind) return false;
    if (x->kind == CoeffNode::Kind::Const) return x->value == y->value;
    if (x->a && !equal(x->a, y->a)) return false;
    if (x->b && !equal(x->b, y->b)) return false;
    return true;
  }

  static std::string str(const CoeffPtr& p) {
    switch (p->kind) {
      case CoeffNode::Kind::Const: return to_string(p->value);
      case CoeffNode::Kind::Index: return "k";
      case CoeffNode::Kind::Add: return "(" + str(p->a) + "+" + str(p->b) + ")";
      case CoeffNode::Kind::Sub: return "(" + str(p->a) + "-" + str(p->b) + ")";
      case CoeffNode::Kind::Mul: return "(" + str(p->a) + "*" + str(p->b) + ")";
      case CoeffNode::Kind::Div: return "(" + str(p->a) + "/" + str(p->b) + ")";
      case CoeffNode::Kind::Neg: return "(-" + str(p->a) + ")";
      case CoeffNode::Kind::Pow2: return "2^" + str(p->a);
    }
    throw Error("unreachable coefficient kind");
  }

  CoeffPtr p_;
};

}  // namespace rieszterm
