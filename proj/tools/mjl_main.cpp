// mjl: run minilang scripts, print inference reports, compute dispatch
// metrics, and show how array views are laid out.
//
// Exit codes: 0 success, 1 runtime error, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mjl/errors.hpp"
#include "mjl/infer.hpp"
#include "mjl/interpreter.hpp"
#include "mjl/metrics.hpp"
#include "mjl/views.hpp"

namespace {

using nlohmann::json;

constexpr int kRuntimeError = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(const std::string& where, const mjl::Error& e) {
  std::cerr << where;
  if (e.location().valid()) std::cerr << ":" << e.location().to_string();
  std::cerr << ": " << e.kind() << ": " << e.what() << "\n";
}

struct Common {
  std::string rule = "trailing-drop";
  std::string format = "text";
};

mjl::InterpreterOptions interpreter_options(const Common& c) {
  mjl::InterpreterOptions o;
  o.rule = *mjl::parse_rule_set(c.rule);
  return o;
}

int cmd_run(const Common& c, const std::string& path, bool trace) {
  auto opts = interpreter_options(c);
  opts.trace = trace;
  mjl::Interpreter interp(opts);
  mjl::ast::Program program;
  try {
    program = interp.parse(read_file(path));
    interp.load(program);
  } catch (const mjl::Error& e) {
    report(path, e);
    return kInputError;
  }
  const bool jl = c.format == "json-lines";
  auto emit = [&](const mjl::StatementResult& r) {
    if (jl) {
      std::cout << json{{"loc", r.loc.to_string()}, {"value", r.value.to_string()},
                        {"type", mjl::type_of(r.value).to_string()}}
                       .dump()
                << "\n";
    } else {
      std::cout << r.value.to_string() << "\n";
    }
  };
  int status = 0;
  try {
    interp.execute(program, emit);
  } catch (const mjl::Error& e) {
    std::cout.flush();
    report(path, e);
    status = kRuntimeError;
  }
  if (trace) {
    for (const auto& t : interp.trace()) {
      if (t.site < interp.prelude_end_site()) continue;
      if (jl) {
        std::cout << json{{"trace", t.site}, {"method", t.method}, {"args", t.arg_types.to_string()},
                          {"result", t.result.to_string()}}
                         .dump()
                  << "\n";
      } else {
        std::cout << "trace " << t.method << " " << t.arg_types.to_string() << " -> " << t.result.to_string() << "\n";
      }
    }
  }
  return status;
}

int cmd_infer(const Common& c, const std::string& path, std::size_t max_fixed) {
  mjl::Interpreter interp(interpreter_options(c));
  mjl::ast::Program program;
  try {
    program = interp.parse(read_file(path));
    interp.load(program);
  } catch (const mjl::Error& e) {
    report(path, e);
    return kInputError;
  }
  interp.freeze();
  mjl::InferOptions io;
  io.max_fixed = max_fixed;
  mjl::Inferencer inf(interp.methods(), interp.types(), io);
  const auto result = inf.infer_program(program);
  if (c.format == "json-lines") {
    for (const auto* s : mjl::program_sites(result, program)) {
      json j{{"loc", s->loc.to_string()},
             {"callee", s->callee},
             {"dispatch", s->kind == mjl::DispatchKind::Static ? "STATIC" : "DYNAMIC"},
             {"type", s->type.to_string()},
             {"splice_elidable", s->splice_elidable}};
      if (s->kind == mjl::DispatchKind::Static) j["method"] = s->method->id();
      std::cout << j.dump() << "\n";
    }
  } else {
    std::cout << mjl::format_report(result, program);
  }
  return 0;
}

int cmd_metrics(const Common& c, const std::string& path, bool self, bool natives) {
  mjl::Corpus corpus;
  std::string label;
  try {
    if (self) {
      mjl::Interpreter interp(interpreter_options(c));
      corpus = mjl::corpus_from(interp.methods(), natives);
      label = "prelude (" + c.rule + (natives ? ", natives" : "") + ")";
    } else {
      if (path.empty()) throw InputError("metrics needs a corpus file or --self");
      corpus = mjl::parse_corpus(read_file(path));
      label = path;
    }
    const auto r = mjl::compute_metrics(corpus, label);
    if (c.format == "json-lines") {
      std::cout << json{{"label", r.label},        {"dr", r.dr.to_string()},
                        {"cr", r.cr.to_string()},  {"dos", r.dos.to_string()},
                        {"functions", r.functions}, {"methods", r.methods}}
                       .dump()
                << "\n";
    } else {
      std::cout << mjl::render_table({r});
    }
  } catch (const mjl::Error& e) {
    report(self ? "prelude" : path, e);
    return kInputError;
  }
  return 0;
}

int cmd_view_demo(const Common& c, const std::string& shape_text, const std::string& index_text) {
  mjl::Extents shape;
  try {
    for (const auto& ix : mjl::parse_view_indices(shape_text)) {
      if (ix.kind != mjl::ViewIndex::Kind::Scalar || ix.lo < 0) throw mjl::ArgumentError("bad shape " + shape_text);
      shape.push_back(ix.lo);
    }
    auto base = std::make_shared<const mjl::NdArray>(mjl::NdArray::iota(shape));
    const auto indices = mjl::parse_view_indices(index_text);
    const auto v = mjl::view(base, indices);
    if (c.format == "json-lines") {
      std::cout << json{{"kind", mjl::to_string(v.kind)}, {"offset", v.offset}, {"shape", v.shape},
                        {"strides", v.strides},           {"crank", v.crank}}
                       .dump()
                << "\n";
    } else {
      std::cout << "kind    " << mjl::to_string(v.kind) << "\n"
                << "offset  " << v.offset << "\n"
                << "shape   " << mjl::shape_to_string(v.shape) << "\n"
                << "strides " << mjl::shape_to_string(v.strides) << "\n"
                << "crank   " << v.crank << "\n";
    }
  } catch (const mjl::Error& e) {
    // Shape and indices both come from the command line.
    report("view-demo", e);
    return kInputError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-dispatch minilang: run, infer, metrics, view-demo"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--index-rule", common.rule, "index_shape rule set")
        ->check(CLI::IsMember({"trailing-drop", "all-drop", "apl", "drop-size1"}))
        ->capture_default_str();
    sub->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"text", "json-lines"}))
        ->capture_default_str();
  };

  std::string file;
  bool trace = false;
  auto* run = app.add_subcommand("run", "evaluate a script and print each top-level result");
  run->add_option("file", file, "script (.mjl)")->required();
  run->add_flag("--trace", trace, "also print every completed call of the script");
  add_common(run);

  std::size_t max_fixed = 8;
  auto* infer = app.add_subcommand("infer", "print the inferred type and dispatch kind of every call site");
  infer->add_option("file", file, "script (.mjl)")->required();
  infer->add_option("--widen-max-fixed", max_fixed, "tuple elements kept before widening")->capture_default_str();
  add_common(infer);

  bool self = false;
  bool natives = false;
  auto* metrics = app.add_subcommand("metrics", "dispatch ratio, choice ratio, degree of specialization");
  metrics->add_option("file", file, "corpus: function<TAB>nparams<TAB>nspecialized<TAB>variadic");
  metrics->add_flag("--self", self, "scan the loaded prelude's method tables");
  metrics->add_flag("--include-natives", natives, "with --self, count host-native methods too");
  add_common(metrics);

  std::string shape = "4,5,6";
  std::string index = ":,:,2";
  auto* demo = app.add_subcommand("view-demo", "show kind, offset and strides of a view of an iota array");
  demo->add_option("--shape", shape, "array extents, comma-separated")->capture_default_str();
  demo->add_option("--index", index, "view indices, e.g. \":,:,2\" or \"2,1:3,:\"")->capture_default_str();
  add_common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*run) return cmd_run(common, file, trace);
    if (*infer) return cmd_infer(common, file, max_fixed);
    if (*metrics) return cmd_metrics(common, file, self, natives);
    if (*demo) return cmd_view_demo(common, shape, index);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const mjl::Error& e) {
    report("mjl", e);
    return kRuntimeError;
  }
  return kInputError;
}
