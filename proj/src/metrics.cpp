#include "mjl/metrics.hpp"

#include <charconv>
#include <map>
#include <numeric>

#include "mjl/errors.hpp"

namespace mjl {

Rational::Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
  if (d == 0) throw ArgumentError("zero denominator");
  const auto g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

std::string Rational::to_string() const {
  // round(num/den * 100) with halves going up, in integer arithmetic.
  const std::uint64_t hundredths = (num * 200 + den) / (2 * den);
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(hundredths / 100) + "." + frac;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
}

namespace {

std::map<std::string_view, std::uint64_t> method_counts(const Corpus& c) {
  if (c.empty()) throw EmptyCorpusError();
  std::map<std::string_view, std::uint64_t> counts;
  for (const auto& e : c) ++counts[e.function];
  return counts;
}

}  // namespace

Rational dispatch_ratio(const Corpus& c) {
  const auto counts = method_counts(c);
  return {c.size(), counts.size()};
}

Rational choice_ratio(const Corpus& c) {
  std::uint64_t squares = 0;
  for (const auto& [_, m] : method_counts(c)) squares += m * m;
  return {squares, c.size()};
}

Rational degree_of_specialization(const Corpus& c) {
  if (c.empty()) throw EmptyCorpusError();
  std::uint64_t spec = 0;
  for (const auto& e : c) spec += e.nspecialized;
  return {spec, c.size()};
}

MetricsReport compute_metrics(const Corpus& c, std::string label) {
  MetricsReport r;
  r.label = std::move(label);
  r.dr = dispatch_ratio(c);
  r.cr = choice_ratio(c);
  r.dos = degree_of_specialization(c);
  r.functions = method_counts(c).size();
  r.methods = c.size();
  return r;
}

std::string render_table(const std::vector<MetricsReport>& rows) {
  std::vector<std::vector<std::string>> cells = {{"Language", "DR", "CR", "DoS", "Functions", "Methods"}};
  for (const auto& r : rows) {
    cells.push_back({r.label, r.dr.to_string(), r.cr.to_string(), r.dos.to_string(), std::to_string(r.functions),
                     std::to_string(r.methods)});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 0) {
        line += row[i] + std::string(width[i] - row[i].size(), ' ');
      } else {
        line += "  " + std::string(width[i] - row[i].size(), ' ') + row[i];
      }
    }
    out += line + "\n";
  }
  return out;
}

namespace {

std::size_t parse_count(std::string_view s, std::size_t line, const char* what) {
  std::size_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw CorpusFormatError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Corpus parse_corpus(std::string_view text) {
  Corpus out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 4) {
      throw CorpusFormatError(line_no, "expected 4 tab-separated fields, found " + std::to_string(fields.size()));
    }
    CorpusEntry e;
    e.function = std::string(fields[0]);
    if (e.function.empty()) throw CorpusFormatError(line_no, "empty function name");
    e.nparams = parse_count(fields[1], line_no, "nparams");
    e.nspecialized = parse_count(fields[2], line_no, "nspecialized");
    if (fields[3] != "0" && fields[3] != "1") throw CorpusFormatError(line_no, "variadic must be 0 or 1");
    e.variadic = fields[3] == "1";
    if (e.nspecialized > e.nparams) throw CorpusFormatError(line_no, "nspecialized exceeds nparams");
    if (e.variadic && e.nparams == 0) throw CorpusFormatError(line_no, "variadic method without parameters");
    out.push_back(std::move(e));
  }
  return out;
}

std::string write_corpus(const Corpus& c) {
  std::string out;
  for (const auto& e : c) {
    out += e.function + "\t" + std::to_string(e.nparams) + "\t" + std::to_string(e.nspecialized) + "\t" +
           (e.variadic ? "1" : "0") + "\n";
  }
  return out;
}

Corpus corpus_from(const MethodTable& table, bool include_natives) {
  Corpus out;
  for (const auto* gf : table.functions()) {
    for (const auto& m : gf->methods()) {
      if (m->is_native() && !include_natives) continue;
      const auto& sig = m->signature();
      out.push_back({gf->name(), sig.params().size(), sig.specialized_count(), sig.variadic()});
    }
  }
  return out;
}

}  // namespace mjl
