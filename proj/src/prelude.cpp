#include "mjl/prelude.hpp"

#include <array>
#include <stdexcept>

namespace mjl {

namespace {

constexpr std::array<RuleSet, 4> kRuleSets = {RuleSet::TrailingDrop, RuleSet::AllDrop, RuleSet::Apl,
                                              RuleSet::DropSize1};

}  // namespace

std::string_view rule_set_name(RuleSet r) {
  switch (r) {
    case RuleSet::TrailingDrop:
      return "trailing-drop";
    case RuleSet::AllDrop:
      return "all-drop";
    case RuleSet::Apl:
      return "apl";
    case RuleSet::DropSize1:
      return "drop-size1";
  }
  return "?";
}

std::optional<RuleSet> parse_rule_set(std::string_view name) {
  for (auto r : kRuleSets) {
    if (rule_set_name(r) == name) return r;
  }
  return std::nullopt;
}

std::span<const RuleSet> all_rule_sets() { return kRuleSets; }

std::string_view prelude_text(std::string_view stem) {
  for (const auto& [name, text] : detail::embedded_preludes()) {
    if (name == stem) return text;
  }
  throw std::out_of_range("no prelude named " + std::string(stem));
}

std::string_view rule_set_prelude(RuleSet r) {
  switch (r) {
    case RuleSet::TrailingDrop:
      return prelude_text("trailing_drop");
    case RuleSet::AllDrop:
      return prelude_text("all_drop");
    case RuleSet::Apl:
      return prelude_text("apl");
    case RuleSet::DropSize1:
      return prelude_text("drop_size1");
  }
  throw std::out_of_range("unknown rule set");
}

}  // namespace mjl
