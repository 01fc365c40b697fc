#pragma once

// Syntax tree of minilang programs.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mjl/errors.hpp"

namespace mjl::ast {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit {
  std::int64_t value = 0;
};
struct FloatLit {
  double value = 0.0;
};
struct StringLit {
  std::string value;
};
struct Name {
  std::string id;
};

// A call argument or tuple element; `splice` marks `x...`.
struct Arg {
  ExprPtr value;
  bool splice = false;
};

// How a call was written; only affects printing.
enum class CallSyntax { Prefix, Infix, Index };

struct Call {
  std::string callee;
  std::vector<Arg> args;
  CallSyntax syntax = CallSyntax::Prefix;
  int site = -1;  // unique call-site id
};

struct TupleExpr {
  std::vector<Arg> items;
};

struct Expr {
  std::variant<IntLit, FloatLit, StringLit, Name, Call, TupleExpr> node;
  SourceLoc loc;
};

struct Param {
  std::string name;
  std::optional<std::string> type;  // nullopt: no `::` specializer
  bool variadic = false;
};

struct MethodDef {
  std::string name;
  std::vector<Param> params;
  ExprPtr body;
  SourceLoc loc;
};

struct Assign {
  std::string name;
  ExprPtr value;
  SourceLoc loc;
};

struct ExprStmt {
  ExprPtr expr;
};

using Stmt = std::variant<std::shared_ptr<const MethodDef>, Assign, ExprStmt>;

struct Program {
  std::vector<Stmt> stmts;
  int first_site = 0;  // call-site ids in [first_site, end_site)
  int end_site = 0;
};

std::string print(const Expr& e);
std::string print(const MethodDef& d);
std::string print(const Program& p);

// Equality ignoring source locations, call-site ids and call syntax.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Program& a, const Program& b);

// Visits every Call node under `e` (pre-order).
template <class F>
void for_each_call(const Expr& e, F&& f) {
  if (const auto* c = std::get_if<Call>(&e.node)) {
    f(*c, e.loc);
    for (const auto& a : c->args) for_each_call(*a.value, f);
  } else if (const auto* t = std::get_if<TupleExpr>(&e.node)) {
    for (const auto& a : t->items) for_each_call(*a.value, f);
  }
}

}  // namespace mjl::ast
