#include "mjl/ast.hpp"

#include <charconv>

namespace mjl::ast {

namespace {

std::string print_float(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

std::string print_arg(const Arg& a) { return print(*a.value) + (a.splice ? "..." : ""); }

std::string print_args(const std::vector<Arg>& args, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < args.size(); ++i) {
    if (i > from) out += ", ";
    out += print_arg(args[i]);
  }
  return out;
}

bool is_operator(const std::string& name) { return name == "+" || name == "-" || name == "*" || name == ":"; }

bool args_equal(const std::vector<Arg>& a, const std::vector<Arg>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].splice != b[i].splice || !structurally_equal(*a[i].value, *b[i].value)) return false;
  }
  return true;
}

bool defs_equal(const MethodDef& a, const MethodDef& b) {
  if (a.name != b.name || a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    const auto& p = a.params[i];
    const auto& q = b.params[i];
    if (p.name != q.name || p.type != q.type || p.variadic != q.variadic) return false;
  }
  return structurally_equal(*a.body, *b.body);
}

}  // namespace

std::string print(const Expr& e) {
  struct Printer {
    std::string operator()(const IntLit& i) const { return std::to_string(i.value); }
    std::string operator()(const FloatLit& f) const { return print_float(f.value); }
    std::string operator()(const StringLit& s) const {
      std::string out = "\"";
      for (char c : s.value) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
          out += "\\n";
          continue;
        }
        out += c;
      }
      return out + "\"";
    }
    std::string operator()(const Name& n) const { return n.id; }
    std::string operator()(const Call& c) const {
      const bool no_splice = !(c.args.size() > 0 && (c.args[0].splice || c.args.back().splice));
      if (c.syntax == CallSyntax::Infix && c.args.size() == 2 && no_splice && is_operator(c.callee)) {
        return "(" + print(*c.args[0].value) + " " + c.callee + " " + print(*c.args[1].value) + ")";
      }
      if (c.syntax == CallSyntax::Index && !c.args.empty() && !c.args[0].splice) {
        return print(*c.args[0].value) + "[" + print_args(c.args, 1) + "]";
      }
      return c.callee + "(" + print_args(c.args) + ")";
    }
    std::string operator()(const TupleExpr& t) const {
      if (t.items.size() == 1) return "(" + print_arg(t.items[0]) + ",)";
      return "(" + print_args(t.items) + ")";
    }
  };
  return std::visit(Printer{}, e.node);
}

std::string print(const MethodDef& d) {
  std::string out = d.name + "(";
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    const auto& p = d.params[i];
    if (i) out += ", ";
    out += p.name;
    if (p.type) out += "::" + *p.type;
    if (p.variadic) out += "...";
  }
  return out + ") = " + print(*d.body);
}

std::string print(const Program& p) {
  std::string out;
  for (const auto& s : p.stmts) {
    if (const auto* d = std::get_if<std::shared_ptr<const MethodDef>>(&s)) {
      out += print(**d);
    } else if (const auto* a = std::get_if<Assign>(&s)) {
      out += a->name + " = " + print(*a->value);
    } else {
      out += print(*std::get<ExprStmt>(s).expr);
    }
    out += "\n";
  }
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* x = std::get_if<IntLit>(&a.node)) return x->value == std::get<IntLit>(b.node).value;
  if (const auto* x = std::get_if<FloatLit>(&a.node)) return x->value == std::get<FloatLit>(b.node).value;
  if (const auto* x = std::get_if<StringLit>(&a.node)) return x->value == std::get<StringLit>(b.node).value;
  if (const auto* x = std::get_if<Name>(&a.node)) return x->id == std::get<Name>(b.node).id;
  if (const auto* x = std::get_if<Call>(&a.node)) {
    const auto& y = std::get<Call>(b.node);
    return x->callee == y.callee && args_equal(x->args, y.args);
  }
  return args_equal(std::get<TupleExpr>(a.node).items, std::get<TupleExpr>(b.node).items);
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.stmts.size() != b.stmts.size()) return false;
  for (std::size_t i = 0; i < a.stmts.size(); ++i) {
    const auto& s = a.stmts[i];
    const auto& t = b.stmts[i];
    if (s.index() != t.index()) return false;
    if (const auto* d = std::get_if<std::shared_ptr<const MethodDef>>(&s)) {
      if (!defs_equal(**d, *std::get<std::shared_ptr<const MethodDef>>(t))) return false;
    } else if (const auto* x = std::get_if<Assign>(&s)) {
      const auto& y = std::get<Assign>(t);
      if (x->name != y.name || !structurally_equal(*x->value, *y.value)) return false;
    } else if (!structurally_equal(*std::get<ExprStmt>(s).expr, *std::get<ExprStmt>(t).expr)) {
      return false;
    }
  }
  return true;
}

}  // namespace mjl::ast
