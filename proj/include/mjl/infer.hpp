#pragma once

// Dataflow type inference over minilang programs.
//
// Calls are interpreted abstractly: the argument tuple type of a call is
// matched against every method whose signature it intersects, method
// bodies are evaluated over the narrowed argument types, and results are
// joined. Recursion is resolved by re-running the whole program until no
// instance result changes; tuple widening and a per-function instance
// budget keep the set of instances finite.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mjl/ast.hpp"
#include "mjl/dispatch.hpp"
#include "mjl/types.hpp"

namespace mjl {

struct InferOptions {
  std::size_t max_fixed = 8;   // widening threshold
  std::size_t budget = 64;     // instances per generic function
  std::size_t max_depth = 4;   // tuple nesting kept before coarsening to Any
  std::size_t max_passes = 200;
};

enum class DispatchKind { Static, Dynamic };

struct CallSiteInfo {
  int site = -1;
  std::string callee;
  SourceLoc loc;
  bool reached = false;
  TypeExpr type;  // join over every abstract visit; Bottom if unreached
  DispatchKind kind = DispatchKind::Dynamic;
  MethodPtr method;  // the target when Static
  // Every spliced argument had a tuple type of known length.
  bool splice_elidable = false;
};

struct InstanceInfo {
  std::string method;
  TypeExpr args;
  TypeExpr result;
};

struct InferenceResult {
  std::map<int, CallSiteInfo> sites;
  std::vector<InstanceInfo> instances;
  std::size_t passes = 0;
  bool converged = true;
  bool budget_exceeded = false;

  const CallSiteInfo* site(int id) const;
  // Static sites and their methods, for Interpreter::set_devirtualized.
  std::unordered_map<int, MethodPtr> static_targets() const;
};

// Abstract argument sequence contributed by splicing a value of type t: a
// tuple type contributes itself, Range contributes (Int...), anything else
// (Any...).
TypeExpr splice_types(const TypeExpr& t);

class Inferencer {
 public:
  Inferencer(const MethodTable& methods, const TypeTable& types, InferOptions options = {});

  // Sound bound on the result of calling `function` with arguments of the
  // given tuple type; Bottom when no call can return.
  TypeExpr infer_call(std::string_view function, const TypeExpr& args);

  // Annotates every call site of the program (and of every method body the
  // program can reach). The program's methods must already be defined.
  InferenceResult infer_program(const ast::Program& program);

 private:
  struct Impl;
  const MethodTable& methods_;
  const TypeTable& types_;
  InferOptions options_;
};

// Call sites of `program` in source order.
std::vector<const CallSiteInfo*> program_sites(const InferenceResult& result, const ast::Program& program);

// One line per call site of `program`, in source order:
//   "<line>:<col> STATIC <method-id> <type>" or "<line>:<col> DYNAMIC <callee> <type>",
// with " splice-elidable" appended where it applies.
std::string format_report(const InferenceResult& result, const ast::Program& program);

}  // namespace mjl
