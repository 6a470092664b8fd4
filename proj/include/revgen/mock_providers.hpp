#pragma once

// Deterministic stand-ins for the three remote capabilities.
//
// Every result is a pure function of the call arguments and the run seed.
// Fixture behaviour can be steered from the data itself with inline
// directives of the form [mock:key=value]:
//
//   [mock:judge=N]            judge answers "Score: N" (N may be out of range)
//   [mock:judge=unparseable]  judge answers without a score line
//   [mock:gen=missing_label]  instruction completion omits its last label
//   [mock:gen=misalign]       MCQ without the response among the choices, or a
//                             "longer text" shorter than the summary
//   [mock:fqe=X]              forward (x->en) quality estimate X
//   [mock:bqe=X]              backward (en->x) quality estimate X
//   [mock:fail=llm|mt|qe]     the named provider fails as unreachable

#include "revgen/providers.hpp"
#include "revgen/templates.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revgen::providers {

struct MockOptions {
    std::uint64_t seed = 0;

    enum class JudgeMode { hash, fixed };
    JudgeMode judge_mode = JudgeMode::hash;
    int fixed_score = 4;

    enum class QeMode { hash, fixed };
    QeMode qe_mode = QeMode::hash;
    double qe_fixed = 0.9;
    double qe_min = 0.6;  // hash mode draws uniformly from [qe_min, 1]

    /// Exact (source, translation) -> score overrides.
    std::map<std::pair<std::string, std::string>, double> qe_fixtures;
};

/// Value of the first [mock:key=value] directive in `text`.
std::optional<std::string> mock_directive(std::string_view text, std::string_view key);

/// Reversible tagging transform: translate(translate(t, a->b), b->a) == t.
class MockTranslator final : public Translator {
public:
    std::string translate(const TranslationRequest& req) override;
    std::string model_id() const override { return "mock-mt"; }
};

class MockQualityEstimator final : public QualityEstimator {
public:
    explicit MockQualityEstimator(MockOptions opts) : opts_(std::move(opts)) {}
    QualityEstimate estimate_quality(std::string_view source, std::string_view translation) override;
    std::string model_id() const override { return "mock-qe"; }

private:
    MockOptions opts_;
};

/// Recognizes prompts rendered from the given templates and answers with
/// well-formed completions for them; unknown prompts get a generic reply.
class MockGenerator final : public TextGenerator {
public:
    MockGenerator(MockOptions opts, std::vector<promptkit::TaskTemplate> pool, promptkit::ScoringTemplate scoring);
    std::string generate(const GenerationRequest& req) override;
    std::string model_id() const override { return "mock-llm"; }

private:
    std::string judge_completion(std::string_view instruction, std::string_view response, std::uint64_t h) const;
    std::string task_completion(const promptkit::TaskTemplate& t, std::string_view response, std::uint64_t h) const;

    MockOptions opts_;
    std::vector<promptkit::TaskTemplate> pool_;
    promptkit::ScoringTemplate scoring_;
};

ProviderSet make_mock_providers(const MockOptions& opts, std::vector<promptkit::TaskTemplate> pool,
                                promptkit::ScoringTemplate scoring);

}  // namespace revgen::providers
