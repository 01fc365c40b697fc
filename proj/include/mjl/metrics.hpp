#pragma once

// Multiple-dispatch usage metrics over a method corpus: dispatch ratio,
// choice ratio and degree of specialization.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mjl/dispatch.hpp"

namespace mjl {

struct CorpusEntry {
  std::string function;
  std::size_t nparams = 0;
  std::size_t nspecialized = 0;  // a variadic slot counts once
  bool variadic = false;
  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

using Corpus = std::vector<CorpusEntry>;

// Exact non-negative rational, kept in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Rational() = default;
  Rational(std::uint64_t n, std::uint64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  // Rounded half-up to two decimals, e.g. "2.50".
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
};

// Each throws EmptyCorpusError on an empty corpus.
Rational dispatch_ratio(const Corpus& c);
Rational choice_ratio(const Corpus& c);
Rational degree_of_specialization(const Corpus& c);

struct MetricsReport {
  std::string label;
  Rational dr, cr, dos;
  std::size_t functions = 0;
  std::size_t methods = 0;
};

MetricsReport compute_metrics(const Corpus& c, std::string label = "corpus");

// Aligned table with the columns Language, DR, CR, DoS, Functions, Methods.
std::string render_table(const std::vector<MetricsReport>& rows);

// One record per line: function<TAB>nparams<TAB>nspecialized<TAB>variadic.
// Blank lines and lines starting with '#' are skipped. Throws
// CorpusFormatError naming the 1-based line.
Corpus parse_corpus(std::string_view text);
std::string write_corpus(const Corpus& c);

// Every method of the table; natives only when requested.
Corpus corpus_from(const MethodTable& table, bool include_natives);

}  // namespace mjl
