#pragma once

#include "revgen/templates.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace revgen::promptkit {

/// The English instruction recovered from a generation, with its sections.
struct ParsedInstruction {
    std::string instruction_en;
    std::vector<std::pair<std::string, std::string>> sections;  // label -> text, in label order
    std::string template_id;

    const std::string* section(std::string_view label) const;
};

enum class ParseFailureReason { missing_label, empty_section };

struct ParseFailure {
    ParseFailureReason reason;
    std::string label;

    std::string describe() const;
};

using ParseOutcome = std::variant<ParsedInstruction, ParseFailure>;

enum class AlignmentViolation {
    response_not_among_choices,
    answer_not_matching_choice,
    source_shorter_than_summary,
};

std::string_view to_string(ParseFailureReason r);
std::string_view to_string(AlignmentViolation v);

/// Weighted choice, deterministic in (seed, record_id). Throws ConfigError on an empty pool.
const TaskTemplate& select_template(std::span<const TaskTemplate> pool, std::uint64_t seed,
                                    std::string_view record_id);

std::string render_instruction_prompt(const TaskTemplate& tmpl, std::string_view response_en);

/// Splits the completion at the template's labels and assembles I_en.
/// When the template body ends with the first label and the completion does
/// not repeat it, the leading text is read as the first section.
ParseOutcome parse_generation(const TaskTemplate& tmpl, std::string_view completion);

/// Re-applies the assembly rule to parsed sections.
std::string assemble(const TaskTemplate& tmpl, const std::vector<std::pair<std::string, std::string>>& sections);

/// NFC, case fold, whitespace collapse, trailing punctuation strip.
std::string normalize_choice(std::string_view s);

/// Letter A-D named by an "Answer:" section, if readable.
std::optional<char> answer_letter(std::string_view answer_section);

std::optional<AlignmentViolation> validate_alignment(const TaskTemplate& tmpl, const ParsedInstruction& parsed,
                                                     std::string_view response_en);

}  // namespace revgen::promptkit
