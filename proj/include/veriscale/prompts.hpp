#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace veriscale {

// A rendered prompt. `system` is absent for templates that inline their
// role description into the user message.
struct PromptPair {
  std::optional<std::string> system;
  std::string user;
};

namespace prompts {

// Raw template texts. Slots are written {name}; the seed user template
// additionally escapes literal braces as {{ and }} because its output
// format line sits next to substitution slots.
[[nodiscard]] const std::string& seed_system();
[[nodiscard]] const std::string& seed_user_template();
[[nodiscard]] const std::string& decomposition_template();
[[nodiscard]] const std::string& spec_template();
[[nodiscard]] const std::string& adversarial_template();

}  // namespace prompts

// Replaces every {name} present in `slots` with its value (values are
// emitted verbatim, never re-scanned). Unknown {name} groups pass through
// unchanged. When unescape_braces is set, {{ and }} collapse to single
// literal braces.
[[nodiscard]] std::string render_template(
    std::string_view tpl, const std::vector<std::pair<std::string, std::string>>& slots,
    bool unescape_braces = false);

}  // namespace veriscale
