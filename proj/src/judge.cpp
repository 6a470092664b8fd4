#include "revgen/judge.hpp"

#include "revgen/errors.hpp"
#include "revgen/unicode.hpp"

#include <charconv>
#include <vector>

namespace revgen::judge {

std::string_view to_string(VerdictFailure f) {
    switch (f) {
        case VerdictFailure::no_score_line: return "no_score_line";
        case VerdictFailure::out_of_range: return "out_of_range";
        case VerdictFailure::non_integer: return "non_integer";
    }
    return "unknown";
}

std::string render_score_prompt(const promptkit::ScoringTemplate& tmpl, std::string_view instruction_en,
                                std::string_view response_en) {
    if (instruction_en.empty()) throw PreconditionError("instruction must be non-empty");
    if (response_en.empty()) throw PreconditionError("response must be non-empty");
    return promptkit::substitute(tmpl.body, {{"instruction", std::string(instruction_en)},
                                             {"response", std::string(response_en)}});
}

namespace {

std::string_view strip_ascii(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

VerdictOutcome parse_verdict(std::string_view completion, std::string_view score_label) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= completion.size()) {
        auto nl = completion.find('\n', start);
        if (nl == std::string_view::npos) nl = completion.size();
        lines.push_back(completion.substr(start, nl - start));
        start = nl + 1;
    }

    // The last label line carrying an integer decides; label lines without
    // one only matter when no such line exists.
    bool saw_label = false;
    for (std::size_t i = lines.size(); i-- > 0;) {
        const std::string_view line = strip_ascii(lines[i]);
        if (!line.starts_with(score_label)) continue;
        saw_label = true;

        std::string_view value = strip_ascii(line.substr(score_label.size()));
        if (value.ends_with('.')) value = strip_ascii(value.substr(0, value.size() - 1));
        std::string_view digits = value;
        if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) digits.remove_prefix(1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) continue;

        long long score = 0;
        const auto* first = value.data() + (value.front() == '+' ? 1 : 0);
        const auto [ptr, ec] = std::from_chars(first, value.data() + value.size(), score);
        if (ec != std::errc{} || score < kMinScore || score > kMaxScore) {
            return VerdictParseFailure{VerdictFailure::out_of_range, std::string(completion)};
        }

        std::string reasoning;
        for (std::size_t j = 0; j < i; ++j) {
            if (j) reasoning.push_back('\n');
            reasoning.append(lines[j]);
        }
        return JudgeVerdict{text::trim(reasoning), static_cast<int>(score), std::string(completion)};
    }
    if (saw_label) return VerdictParseFailure{VerdictFailure::non_integer, std::string(completion)};
    return VerdictParseFailure{VerdictFailure::no_score_line, std::string(completion)};
}

Decision apply_threshold(const JudgeVerdict& verdict, int lambda) {
    if (lambda < kMinScore || lambda > kMaxScore) throw PreconditionError("lambda must lie in 1..5");
    return verdict.score >= lambda ? Decision::keep : Decision::drop;
}

}  // namespace revgen::judge
