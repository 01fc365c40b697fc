// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "mjl/errors.hpp"
#include "mjl/indexing.hpp"
#include "mjl/infer.hpp"
#include "mjl/interpreter.hpp"
#include "mjl/metrics.hpp"
#include "mjl/units.hpp"
#include "mjl/views.hpp"
#include "oracles.hpp"

#ifndef MJL_SOURCE_DIR
#define MJL_SOURCE_DIR "."
#endif

namespace {

using Clock = std::chrono::steady_clock;
using mjl::TypeExpr;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

TypeExpr T(const char* s) { return mjl::parse_type(s); }

std::vector<mjl::Value> run_script(mjl::Interpreter& interp, const std::string& src) {
  std::vector<mjl::Value> out;
  for (auto& r : interp.run(interp.parse(src))) out.push_back(r.value);
  return out;
}

std::size_t rank_of(const mjl::Value& v) { return v.as<mjl::ArrayValue>().array->rank(); }

// ---- 1 ---------------------------------------------------------------------

Outcome rank_triple() {
  Outcome o;
  const auto t0 = Clock::now();
  mjl::Interpreter interp;
  const auto out = run_script(interp,
                              "A = iota(5, 3, 2)\nB = iota(5, 3, 2, 2)\n"
                              "A[1:5, 1:3, 2]\nA[1:5, 2, 1:2]\nB[1:5, 2, 1:2, 1]\n");
  const double dt = seconds_since(t0);
  o.check(out.size() == 3, "expected three results");
  if (!o.ok) return o;
  o.detail = "ranks " + std::to_string(rank_of(out[0])) + ", " + std::to_string(rank_of(out[1])) + ", " +
             std::to_string(rank_of(out[2])) + " in " + std::to_string(dt) + " s";
  o.ok = rank_of(out[0]) == 2 && rank_of(out[1]) == 3 && rank_of(out[2]) == 3 && dt < 1.0;
  return o;
}

// ---- 2 ---------------------------------------------------------------------

// Top-level statements of a prelude: a line starting in column 0 plus its
// indented continuation lines, comments and blank lines dropped.
std::vector<std::string> statements(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(' ');
    if (first == std::string::npos || line[first] == '#') continue;
    if (first > 0 && !out.empty()) {
      out.back() += " " + line.substr(first);
    } else {
      out.push_back(line);
    }
  }
  return out;
}

Outcome rule_set_swap() {
  Outcome o;
  const auto td = statements(mjl::rule_set_prelude(mjl::RuleSet::TrailingDrop));
  const auto ad = statements(mjl::rule_set_prelude(mjl::RuleSet::AllDrop));
  std::multiset<std::string> a(td.begin(), td.end()), b(ad.begin(), ad.end());
  std::size_t changed = 0;
  for (const auto* side : {&a, &b}) {
    const auto& other = side == &a ? b : a;
    for (const auto& s : *side) {
      if (other.count(s)) continue;
      ++changed;
      o.check(s.rfind("index_shape(", 0) == 0, "non-index_shape change: " + s);
    }
  }
  o.check(changed > 0, "preludes are identical");

  mjl::InterpreterOptions all;
  all.rule = mjl::RuleSet::AllDrop;
  mjl::Interpreter interp(all);
  const auto out = run_script(interp, "A = iota(5, 3, 2)\nA[1:5, 2, 1:2]\n");
  o.check(rank_of(out.at(0)) == 2, "all-drop rank " + std::to_string(rank_of(out.at(0))));

  std::mt19937_64 rng(2);
  int cases = 0;
  for (; cases < 50 && o.ok; ++cases) {
    const auto arr = oracle::random_array(rng);
    const auto ix = oracle::random_indices(rng, arr, true);
    std::size_t expect = 0;
    for (const auto& i : ix) expect += i.size().size();
    const auto got = mjl::getindex(arr, ix, mjl::RuleSet::Apl);
    o.check(got.rank() == expect && got.shape() == oracle::index_shape(mjl::RuleSet::Apl, ix),
            "apl rank mismatch at case " + std::to_string(cases));
  }
  if (o.ok) o.detail = std::to_string(changed) + " index_shape statements differ; all-drop rank 2; 50 apl cases";
  return o;
}

// ---- 3 ---------------------------------------------------------------------

Outcome sum_specificity() {
  Outcome o;
  mjl::Interpreter interp;
  const auto& sum = *interp.methods().find("sum");
  std::mt19937_64 rng(3);
  int failures = 0;
  for (int n = 0; n < 1000; ++n) {
    const int arity = std::uniform_int_distribution<int>(0, 6)(rng);
    const bool all_int = n % 2 == 0;
    std::vector<mjl::Value> args;
    std::int64_t int_total = 0;
    for (int i = 0; i < arity; ++i) {
      const std::int64_t k = std::uniform_int_distribution<std::int64_t>(-50, 50)(rng);
      args.emplace_back(k);
      int_total += k;
    }
    if (!all_int) {
      const auto pos = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, arity)(rng));
      args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), mjl::Value(0.25));
    }
    const auto m = sum.select_for(args, interp.types());
    const std::string want = all_int ? "sum#1" : "sum#2";
    if (m->id() != want) ++failures;
    if (sum.select(mjl::type_of_args(args), interp.types())->id() != want) ++failures;
    if (all_int && !(mjl::dispatch_call(sum, args, interp) == mjl::Value(int_total))) ++failures;
  }
  o.ok = failures == 0;
  o.detail = "1000 cases, " + std::to_string(failures) + " failures";
  return o;
}

// ---- 4 ---------------------------------------------------------------------

Outcome inference_soundness() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::size_t sites = 0, violations = 0, mismatches = 0;
  const int programs = 500;
  for (int n = 0; n < programs; ++n) {
    const auto src = oracle::random_program(rng);
    const auto r = oracle::check_soundness(src);
    sites += r.sites_checked;
    violations += r.violations;
    mismatches += r.devirt_mismatches;
    if ((r.violations || r.devirt_mismatches) && o.ok) {
      o.ok = false;
      std::cerr << "unsound program:\n" << src << r.first_problem << "\n";
    }
  }
  o.detail = std::to_string(programs) + " programs, " + std::to_string(sites) + " executed calls, " +
             std::to_string(violations) + " violations, " + std::to_string(mismatches) + " static-target mismatches";
  return o;
}

// ---- 5 ---------------------------------------------------------------------

Outcome sharp_inference() {
  Outcome o;
  mjl::Interpreter interp;
  mjl::Inferencer inf(interp.methods(), interp.types());
  const auto two = inf.infer_call("index_shape", T("(Range, Range, Int)"));
  const auto three = inf.infer_call("index_shape", T("(Range, Int, Range)"));
  o.ok = two == T("(Int, Int)") && three == T("(Int, Int, Int)");
  o.detail = "(Range, Range, Int) -> " + two.to_string() + ", (Range, Int, Range) -> " + three.to_string();
  return o;
}

// ---- 6 ---------------------------------------------------------------------

Outcome widening_termination() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<std::string> programs = {
      // Grows by one argument per call until the 12-ary method takes over.
      "grow(xs...) = grow(xs..., 1)\n"
      "grow(a, b, c, d, e, f, g, h, i, j, k, l, xs...) = tuple(a, l, xs...)\ngrow()\ngrow(2.5)\n",
      "f(a, b, c, d, e, xs...) = tuple(xs..., a, b, c, d, e)\nf(1, 2, 3, 4, 5, 6, 7)\nf(1, 2, 3, 4, 5)\n",
      "f(xs...) = f(xs..., 1)\nf()\n",
      "f(x) = f((x,))\nf(1)\n",
      "f(x, xs...) = f(xs..., x, x)\nf(1, 2.5)\n",
      "double(xs...) = tuple(xs..., xs...)\nquad(xs...) = double(double(xs...)...)\n"
      "quad(1, 2, 3)\nquad(quad(1, 2)...)\nquad(quad(quad(1)...)...)\n",
  };
  // These double their arguments on every call; running them would need
  // exponential memory, so only inference is checked.
  const std::vector<std::string> infer_only = {
      "f(x) = f(tuple(x, x))\nf(1)\n",
      "f(xs...) = g(xs..., xs...)\ng(xs...) = f(1, xs...)\nf(1)\n",
  };
  std::size_t sites = 0;
  for (const auto& src : programs) {
    const auto r = oracle::check_soundness(src);
    sites += r.sites_checked;
    o.check(r.violations == 0 && r.devirt_mismatches == 0, "unsound on:\n" + src + r.first_problem);
  }
  std::vector<std::string> all = programs;
  all.insert(all.end(), infer_only.begin(), infer_only.end());
  for (const auto& src : all) {

    mjl::Interpreter interp;
    const auto program = interp.parse(src);
    interp.load(program);
    interp.freeze();
    mjl::InferOptions io;
    mjl::Inferencer inf(interp.methods(), interp.types(), io);
    const auto res = inf.infer_program(program);
    o.check(res.converged, "no fixpoint for:\n" + src);
    o.check(!res.budget_exceeded, "instance budget exceeded for:\n" + src);
  }

  // The (T...) > (T, T...) > ... chain as argument types, to depth 10.
  mjl::Interpreter interp;
  const auto defs = interp.parse("dup(xs...) = tuple(xs..., xs...)\nrest(x, xs...) = xs\n");
  interp.load(defs);
  interp.freeze();
  mjl::Inferencer inf(interp.methods(), interp.types());
  for (const char* leaf : {"Int", "Float"}) {
    const TypeExpr e = TypeExpr::named(leaf);
    for (std::size_t n = 0; n <= 10; ++n) {
      const TypeExpr args = TypeExpr::tuple(std::vector<TypeExpr>(n, e), e);
      for (const char* fn : {"dup", "rest", "tuple", "sum"}) {
        const auto res = inf.infer_call(fn, args);
        // Concrete members of the chain element: n and n + 3 copies.
        for (std::size_t len : {n, n + 3}) {
          std::vector<mjl::Value> vals;
          for (std::size_t i = 0; i < len; ++i) vals.push_back(e.name() == "Int" ? mjl::Value(2) : mjl::Value(2.5));
          if (std::string(fn) == "rest" && len == 0) continue;
          const auto v = interp.call(fn, vals);
          o.check(mjl::subtype(mjl::type_of(v), res, interp.types()),
                  std::string(fn) + args.to_string() + " inferred " + res.to_string() + " but ran to " +
                      mjl::type_of(v).to_string());
        }
        if (std::string(fn) != "sum") {
          o.check(res.is_tuple() && res.fixed().size() <= mjl::InferOptions{}.max_fixed, fn + args.to_string());
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  o.check(dt < 30.0, "took " + std::to_string(dt) + " s");
  if (o.ok) {
    o.detail = std::to_string(all.size()) + " adversarial programs and a depth-10 chain, " +
               std::to_string(sites) + " executed calls sound, " + std::to_string(dt) + " s";
  }
  return o;
}

// ---- 7 ---------------------------------------------------------------------

Outcome indexing_oracle() {
  Outcome o;
  std::mt19937_64 rng(7);
  const auto rules = mjl::all_rule_sets();
  int n = 0;
  for (; n < 1000 && o.ok; ++n) {
    const auto rule = rules[static_cast<std::size_t>(n) % rules.size()];
    const auto a = oracle::random_array(rng);
    const auto ix = oracle::random_indices(rng, a, true);
    const auto shape = oracle::index_shape(rule, ix);
    const auto got = mjl::getindex(a, ix, rule);
    o.check(got == oracle::copy_loop(a, ix, shape), "mismatch at case " + std::to_string(n));
  }
  if (o.ok) o.detail = std::to_string(n) + " cases over " + std::to_string(rules.size()) + " rules, exact";
  return o;
}

// ---- 8 ---------------------------------------------------------------------

Outcome views() {
  Outcome o;
  auto base = std::make_shared<const mjl::NdArray>(mjl::NdArray::iota({4, 5, 6}));
  const auto v = mjl::view(base, mjl::parse_view_indices(":,:,2"));
  o.check(v.kind == mjl::ViewKind::Contiguous && v.offset == 20 && v.strides == mjl::Extents{1, 4},
          "plane view: " + mjl::to_string(v.kind) + " offset " + std::to_string(v.offset));

  std::mt19937_64 rng(8);
  int n = 0;
  for (; n < 500 && o.ok; ++n) {
    mjl::Extents shape;
    const int rank = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int k = 0; k < rank; ++k) shape.push_back(std::uniform_int_distribution<int>(1, 5)(rng));
    auto a = std::make_shared<const mjl::NdArray>(mjl::NdArray::iota(shape));
    std::vector<mjl::ViewIndex> vix;
    std::vector<mjl::IndexArg> gix;
    for (auto e : shape) {
      switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0:
          vix.push_back(mjl::ViewIndex::colon());
          gix.push_back(mjl::IndexArg::range(1, e));
          break;
        case 1: {
          const auto i = std::uniform_int_distribution<std::int64_t>(1, e)(rng);
          vix.push_back(mjl::ViewIndex::scalar(i));
          gix.push_back(mjl::IndexArg::scalar(i));
          break;
        }
        default: {
          const auto lo = std::uniform_int_distribution<std::int64_t>(1, e)(rng);
          const auto hi = std::uniform_int_distribution<std::int64_t>(lo, e)(rng);
          vix.push_back(mjl::ViewIndex::range(lo, hi));
          gix.push_back(mjl::IndexArg::range(lo, hi));
        }
      }
    }
    const auto w = mjl::view(a, vix);
    o.check(mjl::materialize(w) == mjl::getindex(*a, gix, mjl::RuleSet::TrailingDrop),
            "contents differ at case " + std::to_string(n));
    o.check(std::min(oracle::crank_from_strides(w.shape, w.strides), w.rank()) == w.crank,
            "crank differs at case " + std::to_string(n));
  }
  if (o.ok) o.detail = "plane view Contiguous/20/(1, 4); " + std::to_string(n) + " random views";
  return o;
}

// ---- 9 ---------------------------------------------------------------------

Outcome metrics() {
  Outcome o;
  std::ifstream in(std::string(MJL_SOURCE_DIR) + "/data/sample_corpus.tsv");
  std::stringstream ss;
  ss << in.rdbuf();
  o.check(static_cast<bool>(in), "cannot read data/sample_corpus.tsv");
  if (!o.ok) return o;
  const auto r = mjl::compute_metrics(mjl::parse_corpus(ss.str()));
  o.check(r.dr == mjl::Rational(2, 1) && r.cr == mjl::Rational(5, 2) && r.dos == mjl::Rational(1, 1),
          "sample gave DR " + r.dr.to_string() + " CR " + r.cr.to_string() + " DoS " + r.dos.to_string());

  std::mt19937_64 rng(9);
  for (int n = 0; n < 1000 && o.ok; ++n) {
    mjl::Corpus c;
    const int nm = std::uniform_int_distribution<int>(1, 40)(rng);
    const int nf = std::uniform_int_distribution<int>(1, 10)(rng);
    for (int m = 0; m < nm; ++m) {
      const auto np = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 4)(rng));
      c.push_back({"f" + std::to_string(std::uniform_int_distribution<int>(0, nf - 1)(rng)), np,
                   static_cast<std::size_t>(std::uniform_int_distribution<int>(0, static_cast<int>(np))(rng)), false});
    }
    o.check(!(mjl::choice_ratio(c) < mjl::dispatch_ratio(c)), "CR < DR at corpus " + std::to_string(n));
  }
  if (o.ok) o.detail = "sample DR 2.00 CR 2.50 DoS 1.00; CR >= DR on 1000 corpora (Table 1 row not reproduced)";
  return o;
}

// ---- 10 --------------------------------------------------------------------

Outcome units() {
  Outcome o;
  using mjl::units::Dimension;
  const std::vector<Dimension> dims = {mjl::units::kDimensionless, mjl::units::kMeter, mjl::units::kKilogram,
                                       mjl::units::kSecond, mjl::units::kMeter + Dimension::base(2, -1)};
  int pairs = 0;
  for (const auto& a : dims) {
    for (const auto& b : dims) {
      ++pairs;
      const mjl::units::Quantity x{1.5, a}, y{2.25, b};
      if (a == b) {
        try {
          o.check(mjl::units::qadd(x, y) == mjl::units::Quantity{3.75, a}, "wrong sum");
        } catch (const mjl::Error& e) {
          o.check(false, std::string("same-dimension add raised ") + e.what());
        }
        continue;
      }
      try {
        mjl::units::qadd(x, y);
        o.check(false, "no error for " + a.to_string() + " + " + b.to_string());
      } catch (const mjl::UnitMismatchError& e) {
        const std::string msg = e.what();
        o.check(e.lhs() == a.to_string() && e.rhs() == b.to_string() && msg.find(a.to_string()) != std::string::npos &&
                    msg.find(b.to_string()) != std::string::npos,
                "message does not name both dimensions: " + msg);
      }
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " pairs over 5 dimensions";
  return o;
}

// ---- 11 --------------------------------------------------------------------

Outcome dispatch_cache() {
  Outcome o;
  constexpr int kCalls = 1'000'000;
  auto time_calls = [&](bool cache) {
    mjl::InterpreterOptions opts;
    opts.cache = cache;
    mjl::Interpreter interp(opts);
    const auto& plus = *interp.methods().find("+");
    const std::vector<mjl::Value> args = {mjl::Value(3), mjl::Value(4)};
    std::int64_t acc = 0;
    const auto t0 = Clock::now();
    for (int i = 0; i < kCalls; ++i) acc += mjl::dispatch_call(plus, args, interp).as_int();
    const double dt = seconds_since(t0);
    o.check(acc == 7LL * kCalls, "wrong results");
    return dt;
  };
  time_calls(true);  // warm-up
  const double cached = time_calls(true);
  const double uncached = time_calls(false);
  const double speedup = uncached / cached;
  std::ostringstream d;
  d.precision(3);
  d << "10^6 calls: cached " << cached << " s, uncached " << uncached << " s, speedup " << speedup << "x";
  if (o.ok) {
    o.ok = speedup >= 5.0;
    o.detail = d.str();
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"rank triple", rank_triple},
      {"rule-set swap", rule_set_swap},
      {"sum specificity", sum_specificity},
      {"inference soundness", inference_soundness},
      {"sharp index_shape inference", sharp_inference},
      {"widening termination", widening_termination},
      {"indexing oracle equivalence", indexing_oracle},
      {"views", views},
      {"metrics formulas", metrics},
      {"units", units},
      {"dispatch cache speedup", dispatch_cache},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    std::cout << (r.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << r.detail << std::endl;
    failed += r.ok ? 0 : 1;
  }
  return failed ? 1 : 0;
}
