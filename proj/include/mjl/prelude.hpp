#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mjl {

// Which `index_shape` definitions are loaded.
enum class RuleSet { TrailingDrop, AllDrop, Apl, DropSize1 };

// "trailing-drop", "all-drop", "apl", "drop-size1".
std::string_view rule_set_name(RuleSet r);
std::optional<RuleSet> parse_rule_set(std::string_view name);
std::span<const RuleSet> all_rule_sets();

// Text of a bundled prelude file by stem ("base", "trailing_drop", ...).
// Throws std::out_of_range for unknown names.
std::string_view prelude_text(std::string_view stem);
std::string_view rule_set_prelude(RuleSet r);

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_preludes();
}

}  // namespace mjl
