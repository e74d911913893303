#include "okapain/expr.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "okapain/errors.hpp"

namespace okapain::atlas {

using cas::RationalFunction;
using cas::Variable;

std::string TwistExponent::render() const {
  if (n_coef == 0) return std::to_string(offset);
  if (offset == 0) return "n";
  return "(n" + std::string(offset < 0 ? "-" : "+") + std::to_string(std::abs(offset)) + ")";
}

struct Expr::Node {
  Kind kind;
  std::shared_ptr<const Node> left, right;
  TwistExponent exp;
  std::optional<Variable> var;
  long value = 0;
};

Expr::Expr() : Expr(integer(0)) {}

Expr Expr::add(Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->left = a.node_;
  n->right = b.node_;
  return Expr(n);
}

Expr Expr::sub(Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sub;
  n->left = a.node_;
  n->right = b.node_;
  return Expr(n);
}

Expr Expr::mul(Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->left = a.node_;
  n->right = b.node_;
  return Expr(n);
}

Expr Expr::quotient(Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Div;
  n->left = a.node_;
  n->right = b.node_;
  return Expr(n);
}

Expr Expr::neg(Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->left = a.node_;
  return Expr(n);
}

Expr Expr::pow(Expr base, TwistExponent e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->left = base.node_;
  n->exp = e;
  return Expr(n);
}

Expr Expr::var(const Variable& v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = v;
  return Expr(n);
}

Expr Expr::integer(long value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Int;
  n->value = value;
  return Expr(n);
}

bool Expr::depends_on_twist() const {
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n == nullptr) continue;
    if (n->kind == Kind::Pow && n->exp.depends_on_twist()) return true;
    stack.push_back(n->left.get());
    stack.push_back(n->right.get());
  }
  return false;
}

namespace {

RationalFunction instantiate_node(const Expr::Node* node, int twist) {
  switch (node->kind) {
    case Expr::Kind::Add:
      return instantiate_node(node->left.get(), twist) +
             instantiate_node(node->right.get(), twist);
    case Expr::Kind::Sub:
      return instantiate_node(node->left.get(), twist) -
             instantiate_node(node->right.get(), twist);
    case Expr::Kind::Mul:
      return instantiate_node(node->left.get(), twist) *
             instantiate_node(node->right.get(), twist);
    case Expr::Kind::Div:
      return instantiate_node(node->left.get(), twist) /
             instantiate_node(node->right.get(), twist);
    case Expr::Kind::Neg:
      return -instantiate_node(node->left.get(), twist);
    case Expr::Kind::Pow: {
      int e = node->exp.instantiate(twist);
      if (e < 0)
        throw okapain::NegativeExponentAfterInstantiation(
            node->exp.render() + " at n=" + std::to_string(twist));
      return instantiate_node(node->left.get(), twist).pow(e);
    }
    case Expr::Kind::Var:
      return RationalFunction::variable(*node->var);
    case Expr::Kind::Int:
      return RationalFunction::constant(node->value);
  }
  return RationalFunction();
}

}  // namespace

RationalFunction Expr::instantiate(int n) const { return instantiate_node(node_.get(), n); }

std::vector<Variable> Expr::variables() const {
  std::set<int> seen;
  std::vector<Variable> out;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n == nullptr) continue;
    if (n->kind == Kind::Var && seen.insert(n->var->id()).second) out.push_back(*n->var);
    stack.push_back(n->left.get());
    stack.push_back(n->right.get());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int precedence_of(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void render_node(const Expr::Node* n, std::ostringstream& out);

// tighten forces parens on equal precedence (right operand of -, /, base of ^).
void render_child(const Expr::Node* child, int parent_prec, std::ostringstream& out,
                  bool tighten = false) {
  int child_prec = precedence_of(child->kind);
  bool parens = tighten ? child_prec <= parent_prec : child_prec < parent_prec;
  if (parens) out << "(";
  render_node(child, out);
  if (parens) out << ")";
}

void render_node(const Expr::Node* n, std::ostringstream& out) {
  switch (n->kind) {
    case Expr::Kind::Add:
      render_child(n->left.get(), 1, out);
      out << "+";
      render_child(n->right.get(), 1, out);
      break;
    case Expr::Kind::Sub:
      render_child(n->left.get(), 1, out);
      out << "-";
      render_child(n->right.get(), 1, out, true);
      break;
    case Expr::Kind::Mul:
      render_child(n->left.get(), 2, out);
      out << "*";
      render_child(n->right.get(), 2, out);
      break;
    case Expr::Kind::Div:
      render_child(n->left.get(), 2, out);
      out << "/";
      render_child(n->right.get(), 2, out, true);
      break;
    case Expr::Kind::Neg:
      out << "-";
      render_child(n->left.get(), 3, out, true);
      break;
    case Expr::Kind::Pow:
      render_child(n->left.get(), 4, out, true);
      out << "^" << n->exp.render();
      break;
    case Expr::Kind::Var:
      out << n->var->name();
      break;
    case Expr::Kind::Int:
      out << n->value;
      break;
  }
}

}  // namespace

std::string Expr::render() const {
  std::ostringstream out;
  render_node(node_.get(), out);
  return out.str();
}

bool VectorFieldExpr::depends_on_twist() const {
  for (const auto& [e, v] : parts)
    if (e.depends_on_twist()) return true;
  return false;
}

std::vector<Variable> VectorFieldExpr::variables() const {
  std::set<int> seen;
  std::vector<Variable> out;
  for (const auto& [e, v] : parts)
    for (const auto& w : e.variables())
      if (seen.insert(w.id()).second) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::string VectorFieldExpr::render() const {
  if (parts.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, v] : parts) {
    if (!first) out << " + ";
    out << e.render() << " d/d" << v.name();
    first = false;
  }
  return out.str();
}

}  // namespace okapain::atlas
