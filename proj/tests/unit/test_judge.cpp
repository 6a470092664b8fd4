#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "revgen/errors.hpp"
#include "revgen/judge.hpp"
#include "revgen/templates.hpp"
#include "support/fixtures.hpp"

using namespace revgen;
using namespace revgen::judge;

namespace {

std::string outcome(const VerdictOutcome& v) {
    if (const auto* j = std::get_if<JudgeVerdict>(&v)) return std::to_string(j->score);
    return std::string(to_string(std::get<VerdictParseFailure>(v).reason));
}

}  // namespace

TEST_CASE("verdict examples") {
    auto v = parse_verdict("Helpful and complete.\nScore: 4");
    REQUIRE(std::holds_alternative<JudgeVerdict>(v));
    CHECK(std::get<JudgeVerdict>(v).score == 4);
    CHECK(std::get<JudgeVerdict>(v).reasoning == "Helpful and complete.");
    CHECK(std::get<JudgeVerdict>(v).raw_completion == "Helpful and complete.\nScore: 4");
    CHECK(outcome(parse_verdict("Score: 3\nScore: 5")) == "5");
    CHECK(outcome(parse_verdict("Score: 7")) == "out_of_range");
}

TEST_CASE("verdict fixture suite") {
    const auto cases = fixture::verdict_cases();
    REQUIRE(cases.size() == 50);
    int deviations = 0;
    for (const auto& c : cases) {
        const auto got = outcome(parse_verdict(c.completion));
        if (got != c.expect) ++deviations;
        CHECK_MESSAGE(got == c.expect, c.kind << ": " << c.completion);
    }
    CHECK(deviations == 0);
}

TEST_CASE("threshold table") {
    for (int s = 1; s <= 5; ++s) {
        for (int l = 1; l <= 5; ++l) {
            const JudgeVerdict v{"", s, "Score: " + std::to_string(s)};
            CHECK((apply_threshold(v, l) == Decision::keep) == (s >= l));
        }
    }
    CHECK(kDefaultLambda == 3);
    CHECK(apply_threshold({"", 3, ""}, 3) == Decision::keep);
    CHECK(apply_threshold({"", 2, ""}, 3) == Decision::drop);
    CHECK_THROWS_AS(apply_threshold({"", 3, ""}, 0), PreconditionError);
    CHECK_THROWS_AS(apply_threshold({"", 3, ""}, 6), PreconditionError);
}

TEST_CASE("score prompt rendering") {
    const auto tmpl = promptkit::default_scoring_template();
    const auto p = render_score_prompt(tmpl, "Name a color.", "Blue.");
    for (int s = 1; s <= 5; ++s) CHECK(p.find("\n" + std::to_string(s) + ": The response") != std::string::npos);
    CHECK(p.ends_with("Instruction: Name a color.\nResponse: Blue."));
    const auto q = render_score_prompt(tmpl, "Repeat {{response}}", "ok");
    CHECK(q.find("Instruction: Repeat {{response}}\n") != std::string::npos);
    CHECK_THROWS_AS(render_score_prompt(tmpl, "x", ""), PreconditionError);
    CHECK_THROWS_AS(render_score_prompt(tmpl, "", "x"), PreconditionError);
}
