#pragma once

#include "revgen/templates.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace revgen::judge {

struct JudgeVerdict {
    std::string reasoning;
    int score = 0;  // 1..5
    std::string raw_completion;

    friend bool operator==(const JudgeVerdict&, const JudgeVerdict&) = default;
};

enum class VerdictFailure { no_score_line, out_of_range, non_integer };

std::string_view to_string(VerdictFailure f);

struct VerdictParseFailure {
    VerdictFailure reason;
    std::string raw_completion;
};

using VerdictOutcome = std::variant<JudgeVerdict, VerdictParseFailure>;

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 5;
inline constexpr int kDefaultLambda = 3;

std::string render_score_prompt(const promptkit::ScoringTemplate& tmpl, std::string_view instruction_en,
                                std::string_view response_en);

/// Reads the score from the last line of the form "Score: <n>" (surrounding
/// whitespace and one trailing period tolerated). Lines above it become the
/// reasoning.
VerdictOutcome parse_verdict(std::string_view completion, std::string_view score_label = "Score:");

enum class Decision { keep, drop };

/// keep iff score >= lambda.
Decision apply_threshold(const JudgeVerdict& verdict, int lambda);

}  // namespace revgen::judge
