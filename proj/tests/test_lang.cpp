#include <gtest/gtest.h>

#include <random>

#include "mjl/errors.hpp"
#include "mjl/interpreter.hpp"
#include "mjl/parser.hpp"
#include "mjl/prelude.hpp"
#include "oracles.hpp"

namespace {

std::vector<std::string> run(const std::string& src, mjl::InterpreterOptions opts = {}) {
  mjl::Interpreter interp(opts);
  std::vector<std::string> out;
  for (const auto& r : interp.run(interp.parse(src))) out.push_back(r.value.to_string());
  return out;
}

std::string run1(const std::string& src) {
  auto out = run(src);
  return out.empty() ? "" : out.back();
}

template <class E>
E run_error(const std::string& src) {
  try {
    run(src);
  } catch (const E& e) {
    return e;
  }
  throw std::runtime_error("no error from: " + src);
}

const mjl::ast::MethodDef& only_def(const mjl::ast::Program& p) {
  return *std::get<std::shared_ptr<const mjl::ast::MethodDef>>(p.stmts.at(0));
}

}  // namespace

TEST(Parse, MethodDefinition) {
  const auto p = mjl::parse("index_shape(i::Real, I...) = index_shape(I...)");
  ASSERT_EQ(p.stmts.size(), 1u);
  const auto& d = only_def(p);
  EXPECT_EQ(d.name, "index_shape");
  ASSERT_EQ(d.params.size(), 2u);
  EXPECT_EQ(d.params[0].type, "Real");
  EXPECT_FALSE(d.params[0].variadic);
  EXPECT_EQ(d.params[1].type, std::nullopt);
  EXPECT_TRUE(d.params[1].variadic);
}

TEST(Parse, ContinuationInsideCall) {
  const auto p = mjl::parse("f(i, I...) = tuple(length(i),\n    f(I...)...)\nf(1:2, 3)\n");
  ASSERT_EQ(p.stmts.size(), 2u);
  EXPECT_EQ(mjl::ast::print(only_def(p)), "f(i, I...) = tuple(length(i), f(I...)...)");
}

TEST(Parse, CallSitesAreUnique) {
  const auto p = mjl::parse("f(x) = g(x) + h(x)\nf(1)\nA[1, 2]\n", mjl::ParseOptions{10});
  EXPECT_EQ(p.first_site, 10);
  EXPECT_EQ(p.end_site, 15);
}

TEST(Parse, TupleForms) {
  EXPECT_EQ(mjl::ast::print(mjl::parse("()")), "()\n");
  EXPECT_EQ(mjl::ast::print(mjl::parse("(1,)")), "(1,)\n");
  EXPECT_EQ(mjl::ast::print(mjl::parse("(1, x...)")), "(1, x...)\n");
  EXPECT_EQ(mjl::ast::print(mjl::parse("(1)")), "1\n");
}

TEST(Parse, SyntaxErrorsCarryLocation) {
  struct Case {
    const char* src;
    int line;
  };
  for (const Case& c : {Case{"f(", 1}, Case{"x = 1\ny = (2 +\n", 3}, Case{"f(x::) = 1", 1}, Case{"1 +* 2", 1},
                        Case{"g(x...,y) = 1", 1}, Case{"x = 1\n)", 2}, Case{"\"open", 1}}) {
    try {
      mjl::parse(c.src);
      ADD_FAILURE() << "no error for " << c.src;
    } catch (const mjl::SyntaxError& e) {
      EXPECT_EQ(e.location().line, c.line) << c.src;
      EXPECT_GT(e.location().column, 0) << c.src;
    }
  }
}

TEST(Parse, PrintRoundTripPreludes) {
  for (const auto& [stem, text] : mjl::detail::embedded_preludes()) {
    const auto p = mjl::parse(text);
    const auto q = mjl::parse(mjl::ast::print(p));
    EXPECT_TRUE(mjl::ast::structurally_equal(p, q)) << stem;
  }
}

TEST(Parse, PrintRoundTripRandomPrograms) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 300; ++n) {
    const std::string src = oracle::random_program(rng);
    const auto p = mjl::parse(src);
    const std::string printed = mjl::ast::print(p);
    const auto q = mjl::parse(printed);
    ASSERT_TRUE(mjl::ast::structurally_equal(p, q)) << src << "\n--- printed ---\n" << printed;
    ASSERT_EQ(mjl::ast::print(q), printed);
  }
}

TEST(Eval, IndexShapeExamples) {
  EXPECT_EQ(run1("index_shape(1:5, 1:3, 2)"), "Shape(5,3)");
  EXPECT_EQ(run1("index_shape(1:5, 2, 1:3, 1)"), "Shape(5,1,3)");
  EXPECT_EQ(run1("index_shape()"), "Shape()");
  EXPECT_EQ(run1("index_shape(2, 3)"), "Shape()");
}

TEST(Eval, Splicing) {
  EXPECT_EQ(run1("tuple(1, (2, 3)...)"), "Shape(1,2,3)");
  EXPECT_EQ(run1("tuple((1:3)...)"), "Shape(1,2,3)");
  EXPECT_EQ(run1("x = (1, 2.5)\ntuple(x..., x...)"), "(1, 2.5, 1, 2.5)");
  EXPECT_EQ(run1("tuple(()...)"), "Shape()");
  EXPECT_EQ(run1("f(xs...) = xs\nf()"), "Shape()");
  EXPECT_EQ(run1("f(x, xs...) = xs\nf(1, 2, 3)"), "Shape(2,3)");
  EXPECT_EQ(run_error<mjl::ArgumentError>("tuple(1...)").kind(), "ArgumentError");
}

TEST(Eval, SumAndArithmetic) {
  EXPECT_EQ(run1("sum(1, 2, 3)"), "6");
  EXPECT_EQ(run1("sum(1, 2.5)"), "3.5");
  EXPECT_EQ(run1("sum()"), "0");
  EXPECT_EQ(run1("2 * 3 + 4 - 1"), "9");
  EXPECT_EQ(run1("-(2 - 5)"), "3");
  EXPECT_EQ(run1("1 + 0.5"), "1.5");
}

TEST(Eval, IndexingRanks) {
  const std::string setup = "A = iota(5, 3, 2)\nB = iota(5, 3, 2, 2)\n";
  EXPECT_EQ(run1(setup + "length(size(A[1:5, 1, 1:2]))"), "3");
  EXPECT_EQ(run1(setup + "length(size(B[1:5, 1, 1:2, 1]))"), "3");
  EXPECT_EQ(run1(setup + "length(size(A[1:5, 1:3, 2]))"), "2");
  EXPECT_EQ(run1(setup + "size(A[1:5, 1:3, 2])"), "Shape(5,3)");
  EXPECT_EQ(run1(setup + "A[2, 3, 1]"), "FloatArray()[12.0]");
}

TEST(Eval, RuleSetSwap) {
  mjl::InterpreterOptions o;
  o.rule = mjl::RuleSet::AllDrop;
  EXPECT_EQ(run("index_shape(1:5, 2, 1:3, 1)", o).back(), "Shape(5,3)");
  o.rule = mjl::RuleSet::Apl;
  EXPECT_EQ(run("index_shape(1:5, 2, 1:3, ints(2, 2))", o).back(), "Shape(5,3,2)");
  o.rule = mjl::RuleSet::DropSize1;
  EXPECT_EQ(run("index_shape(1:5, 2, 1:3, 1)", o).back(), "Shape(5,1,3)");
}

TEST(Eval, DefinitionsAreHoisted) {
  EXPECT_EQ(run1("f(2)\nf(x) = x * 10"), "20");
}

TEST(Eval, RedefinitionReplaces) {
  EXPECT_EQ(run1("f(x::Int) = 1\nf(x::Int) = 2\nf(3)"), "2");
}

TEST(Eval, Units) {
  EXPECT_EQ(run1("meters(3) + meters(4)"), "7.0 m");
  EXPECT_EQ(run1("meters(3) * seconds(2)"), "6.0 m s");
  const auto e = run_error<mjl::UnitMismatchError>("x = 1\nmeters(3) + seconds(4)");
  EXPECT_EQ(e.location().line, 2);
}

TEST(Errors, NoMethodAtUserSite) {
  const auto e = run_error<mjl::NoMethodError>("f(x::Int) = x\n\n  f(2.5)");
  EXPECT_EQ(e.location(), (mjl::SourceLoc{3, 3}));
  EXPECT_EQ(e.function(), "f");
}

TEST(Errors, InnermostUserSite) {
  const auto e = run_error<mjl::NoMethodError>("g(x) = h(x)\nh(x::Int) = x\ng(1.5)");
  EXPECT_EQ(e.location().line, 1);
}

TEST(Errors, PreludeErrorsReportTheUserCall) {
  const auto e = run_error<mjl::NoMethodError>("x = 0\nsum(\"a\", 1)");
  EXPECT_EQ(e.location().line, 2);
}

TEST(Errors, Various) {
  EXPECT_EQ(run_error<mjl::UndefVarError>("y + 1").kind(), "UndefVarError");
  EXPECT_EQ(run_error<mjl::StackOverflowError>("f(x) = f(x)\nf(1)").kind(), "StackOverflowError");
  EXPECT_EQ(run_error<mjl::TypeError>("f(x::Widget) = 1").location().line, 1);
  EXPECT_EQ(run_error<mjl::UserError>("error(\"boom\")").kind(), "ErrorException");
  EXPECT_EQ(run_error<mjl::AmbiguityError>("f(x::Int, y) = 1\nf(x, y::Int) = 2\nf(1, 1)").kind(), "AmbiguityError");
  EXPECT_EQ(run_error<mjl::BoundsError>("A = iota(4, 5, 6)\nA[1:4, 6, 1]").dimension(), 2);
}

TEST(Errors, BodiesCannotSeeGlobals) {
  EXPECT_THROW(run("G = 1\nf(x) = x + G\nf(1)"), mjl::Error);
}

TEST(Trace, AgreesWithSelect) {
  std::mt19937_64 rng(21);
  std::size_t checked = 0;
  for (int n = 0; n < 100; ++n) {
    mjl::InterpreterOptions o;
    o.trace = true;
    o.max_depth = 400;
    mjl::Interpreter interp(o);
    const auto program = interp.parse(oracle::random_program(rng));
    interp.load(program);
    for (const auto& stmt : program.stmts) {
      mjl::ast::Program one;
      one.stmts.push_back(stmt);
      try {
        interp.execute(one);
      } catch (const mjl::Error&) {
        // Completed calls before the error are still in the trace.
      }
    }
    for (const auto& r : interp.trace()) {
      const auto* gf = interp.methods().find(r.function);
      ASSERT_NE(gf, nullptr);
      ASSERT_EQ(gf->select(r.arg_types, interp.types())->id(), r.method) << r.arg_types.to_string();
      ASSERT_TRUE(mjl::subtype(mjl::type_of(r.result), mjl::TypeExpr::any(), interp.types()));
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Values, TypeOf) {
  EXPECT_EQ(mjl::type_of(mjl::Value(1)).to_string(), "Int");
  EXPECT_EQ(mjl::type_of(mjl::Value(1.5)).to_string(), "Float");
  EXPECT_EQ(mjl::type_of(mjl::Value::tuple({1, 2})).to_string(), "(Int, Int)");
  EXPECT_EQ(mjl::type_of(mjl::Value::tuple({1, 2.0})).to_string(), "(Int, Float)");
  EXPECT_EQ(mjl::type_of(mjl::Value(mjl::IndexRange{1, 3})).to_string(), "Range");
  EXPECT_TRUE(mjl::Value::tuple({1, 2}).is<mjl::ShapeValue>());
  EXPECT_TRUE(mjl::Value::tuple({}).is<mjl::ShapeValue>());
}
