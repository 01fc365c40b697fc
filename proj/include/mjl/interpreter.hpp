#pragma once

// Reference evaluator for minilang programs.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mjl/ast.hpp"
#include "mjl/dispatch.hpp"
#include "mjl/prelude.hpp"
#include "mjl/types.hpp"
#include "mjl/value.hpp"

namespace mjl {

struct InterpreterOptions {
  RuleSet rule = RuleSet::TrailingDrop;
  // Load base.mjl (sum, unit constructors) besides the index_shape rules.
  bool base_prelude = true;
  std::size_t max_depth = 2000;
  bool trace = false;
  bool cache = true;
};

// One completed call, recorded when tracing.
struct CallRecord {
  int site = -1;
  std::string function;
  std::string method;  // id of the method that ran
  TypeExpr arg_types;
  Value result;
};

// Result of one top-level expression statement.
struct StatementResult {
  SourceLoc loc;
  Value value;
};

class Interpreter : public CallContext {
 public:
  explicit Interpreter(InterpreterOptions options = {});

  // Parses with call-site ids continuing after everything loaded so far.
  ast::Program parse(std::string_view source);

  // Defines every method of the program (definitions are hoisted).
  void load(const ast::Program& program);
  // Evaluates assignments and expressions in order; `sink`, when set, sees
  // each result as soon as it is produced.
  using ResultSink = std::function<void(const StatementResult&)>;
  std::vector<StatementResult> execute(const ast::Program& program, const ResultSink& sink = {});
  std::vector<StatementResult> run(const ast::Program& program) {
    load(program);
    return execute(program);
  }

  // Rejects further method definitions.
  void freeze() { methods_.freeze(); }

  // Calls at these sites skip selection and run the given method.
  void set_devirtualized(std::unordered_map<int, MethodPtr> targets) { devirtualized_ = std::move(targets); }

  const TypeTable& types() const override { return types_; }
  const MethodTable& methods() const { return methods_; }
  MethodTable& methods() { return methods_; }
  const InterpreterOptions& options() const { return options_; }

  // Sites in [0, prelude_end_site()) belong to the bundled preludes.
  int prelude_end_site() const { return prelude_end_site_; }

  Value call(std::string_view function, std::span<const Value> args) override;
  Value run_body(const Method& m, std::span<const Value> args) override;

  const std::vector<CallRecord>& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }

  const std::map<std::string, Value, std::less<>>& globals() const { return globals_; }

 private:
  struct Local {
    const std::string* name;
    Value value;
  };
  using Frame = std::vector<Local>;

  Value eval(const ast::Expr& e, const Frame* frame);
  Value eval_call(const ast::Call& c, const ast::Expr& e, const Frame* frame);
  void eval_args(const std::vector<ast::Arg>& args, const Frame* frame, std::vector<Value>& out);
  Value call_method(const Method& m, std::span<const Value> args);

  InterpreterOptions options_;
  TypeTable types_;
  MethodTable methods_;
  std::map<std::string, Value, std::less<>> globals_;
  std::unordered_map<int, MethodPtr> devirtualized_;
  std::vector<CallRecord> trace_;
  std::size_t depth_ = 0;
  int next_site_ = 0;
  int prelude_end_site_ = 0;
};

// Defines a parsed method in a table.
const Method& define_method(MethodTable& table, const std::shared_ptr<const ast::MethodDef>& def);

}  // namespace mjl
