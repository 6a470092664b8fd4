#include "revgen/promptkit.hpp"

#include "revgen/errors.hpp"
#include "revgen/hash.hpp"
#include "revgen/unicode.hpp"

#include <algorithm>
#include <numeric>

namespace revgen::promptkit {

const std::string* ParsedInstruction::section(std::string_view label) const {
    for (const auto& [l, text] : sections) {
        if (l == label) return &text;
    }
    return nullptr;
}

std::string_view to_string(ParseFailureReason r) {
    switch (r) {
        case ParseFailureReason::missing_label: return "missing_label";
        case ParseFailureReason::empty_section: return "empty_section";
    }
    return "unknown";
}

std::string_view to_string(AlignmentViolation v) {
    switch (v) {
        case AlignmentViolation::response_not_among_choices: return "response_not_among_choices";
        case AlignmentViolation::answer_not_matching_choice: return "answer_not_matching_choice";
        case AlignmentViolation::source_shorter_than_summary: return "source_shorter_than_summary";
    }
    return "unknown";
}

std::string ParseFailure::describe() const { return std::string(to_string(reason)) + ": " + label; }

const TaskTemplate& select_template(std::span<const TaskTemplate> pool, std::uint64_t seed,
                                    std::string_view record_id) {
    if (pool.empty()) throw ConfigError("template pool is empty");
    const double total = std::accumulate(pool.begin(), pool.end(), 0.0,
                                         [](double acc, const TaskTemplate& t) { return acc + t.weight; });
    const double u = unit_interval(derive_seed(seed, record_id, "template")) * total;
    double acc = 0.0;
    for (const auto& t : pool) {
        acc += t.weight;
        if (u < acc) return t;
    }
    return pool.back();
}

std::string render_instruction_prompt(const TaskTemplate& tmpl, std::string_view response_en) {
    if (response_en.empty()) throw PreconditionError("response must be non-empty");
    return substitute(tmpl.body, {{"response", std::string(response_en)}});
}

namespace {

std::vector<std::string_view> split_lines(std::string_view s) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto nl = s.find('\n', start);
        if (nl == std::string_view::npos) nl = s.size();
        auto line = s.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = nl + 1;
    }
    return lines;
}

std::size_t leading_blanks(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return i;
}

bool body_ends_with_label(const TaskTemplate& tmpl, std::string_view label) {
    auto lines = split_lines(tmpl.body);
    while (!lines.empty() && text::trim(lines.back()).empty()) lines.pop_back();
    return !lines.empty() && text::trim(lines.back()) == label;
}

struct LabelPos {
    std::size_t line;
    std::size_t column;  // first byte after the label
};

}  // namespace

ParseOutcome parse_generation(const TaskTemplate& tmpl, std::string_view completion) {
    const auto lines = split_lines(completion);
    const auto& labels = tmpl.output_labels;

    std::vector<LabelPos> pos;
    std::size_t cursor = 0;
    for (std::size_t li = 0; li < labels.size(); ++li) {
        std::optional<LabelPos> found;
        for (std::size_t ln = cursor; ln < lines.size(); ++ln) {
            const std::size_t indent = leading_blanks(lines[ln]);
            if (lines[ln].substr(indent).starts_with(labels[li])) {
                found = LabelPos{ln, indent + labels[li].size()};
                break;
            }
        }
        if (!found && li == 0 && body_ends_with_label(tmpl, labels[0])) {
            found = LabelPos{0, 0};
        }
        if (!found) return ParseFailure{ParseFailureReason::missing_label, labels[li]};
        pos.push_back(*found);
        cursor = found->line + 1;
    }

    std::vector<std::pair<std::string, std::string>> sections;
    for (std::size_t li = 0; li < labels.size(); ++li) {
        const std::size_t end_line = li + 1 < labels.size() ? pos[li + 1].line : lines.size();
        std::string body(lines[pos[li].line].substr(pos[li].column));
        for (std::size_t ln = pos[li].line + 1; ln < end_line; ++ln) {
            body.push_back('\n');
            body.append(lines[ln]);
        }
        std::string trimmed = text::trim(body);
        if (trimmed.empty()) return ParseFailure{ParseFailureReason::empty_section, labels[li]};
        sections.emplace_back(labels[li], std::move(trimmed));
    }

    ParsedInstruction parsed;
    parsed.instruction_en = assemble(tmpl, sections);
    parsed.sections = std::move(sections);
    parsed.template_id = tmpl.id;
    return parsed;
}

std::string assemble(const TaskTemplate& tmpl, const std::vector<std::pair<std::string, std::string>>& sections) {
    std::map<std::string, std::string, std::less<>> values(sections.begin(), sections.end());
    return substitute(tmpl.assembly, values);
}

std::string normalize_choice(std::string_view s) {
    return text::strip_trailing_punct(text::collapse_whitespace(text::fold_case(text::nfc(s))));
}

std::optional<char> answer_letter(std::string_view answer) {
    auto is_alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    for (std::size_t i = 0; i < answer.size(); ++i) {
        const char c = answer[i];
        if (c < 'A' || c > 'D') continue;
        const bool left_ok = i == 0 || !is_alpha(answer[i - 1]);
        const bool right_ok = i + 1 == answer.size() || !is_alpha(answer[i + 1]);
        if (left_ok && right_ok) return c;
    }
    return std::nullopt;
}

std::optional<AlignmentViolation> validate_alignment(const TaskTemplate& tmpl, const ParsedInstruction& parsed,
                                                     std::string_view response_en) {
    switch (tmpl.kind) {
        case TaskKind::multiple_choice: {
            const std::string target = normalize_choice(response_en);
            std::vector<char> matching;
            for (char letter : {'A', 'B', 'C', 'D'}) {
                const std::string* choice = parsed.section(std::string(1, letter) + ".");
                if (choice && normalize_choice(*choice) == target) matching.push_back(letter);
            }
            if (matching.empty()) return AlignmentViolation::response_not_among_choices;
            const std::string* answer = parsed.section("Answer:");
            const auto letter = answer ? answer_letter(*answer) : std::nullopt;
            if (!letter || std::find(matching.begin(), matching.end(), *letter) == matching.end()) {
                return AlignmentViolation::answer_not_matching_choice;
            }
            return std::nullopt;
        }
        case TaskKind::summarization: {
            const std::string* longer = parsed.section(tmpl.output_labels.front());
            if (!longer || text::char_count(*longer) <= text::char_count(response_en)) {
                return AlignmentViolation::source_shorter_than_summary;
            }
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

}  // namespace revgen::promptkit
