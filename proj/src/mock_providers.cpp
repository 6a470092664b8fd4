#include "revgen/mock_providers.hpp"

#include "revgen/hash.hpp"

#include <array>
#include <charconv>
#include <sstream>

namespace revgen::providers {

std::optional<std::string> mock_directive(std::string_view text, std::string_view key) {
    const std::string needle = "[mock:" + std::string(key) + "=";
    const auto at = text.find(needle);
    if (at == std::string_view::npos) return std::nullopt;
    const auto start = at + needle.size();
    const auto end = text.find(']', start);
    if (end == std::string_view::npos) return std::nullopt;
    return std::string(text.substr(start, end - start));
}

namespace {

std::string tag(std::string_view from, std::string_view to) {
    return "[mt:" + std::string(from) + ">" + std::string(to) + "]";
}

bool fails(std::string_view text, std::string_view provider) {
    const auto v = mock_directive(text, "fail");
    return v && *v == provider;
}

std::string short_hex(std::uint64_t h) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string s(6, '0');
    for (int i = 5; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = kHex[h & 0xF];
        h >>= 4;
    }
    return s;
}

std::string excerpt(std::string_view text, std::size_t max_words) {
    std::istringstream in{std::string(text)};
    std::string word;
    std::string out;
    for (std::size_t n = 0; n < max_words && in >> word; ++n) {
        if (!out.empty()) out.push_back(' ');
        out += word;
    }
    return out;
}

/// Literal-anchored match of a rendered prompt against a template body.
std::optional<std::map<std::string, std::string>> match_template(std::string_view body, std::string_view prompt) {
    const auto segs = promptkit::split_slots(body);
    std::map<std::string, std::string> values;
    std::size_t at = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& seg = segs[i];
        if (!seg.is_slot) {
            if (prompt.compare(at, seg.text.size(), seg.text) != 0) return std::nullopt;
            at += seg.text.size();
            continue;
        }
        std::size_t end = prompt.size();
        if (i + 1 < segs.size()) {
            const std::string& next = segs[i + 1].text;
            end = i + 2 == segs.size() ? prompt.rfind(next) : prompt.find(next, at);
            if (end == std::string_view::npos || end < at) return std::nullopt;
        }
        values[seg.text] = std::string(prompt.substr(at, end - at));
        at = end;
    }
    if (at != prompt.size()) return std::nullopt;
    return values;
}

constexpr std::array<std::string_view, 8> kOpeners = {
    "Describe the main idea of the following passage",
    "Explain the situation described in this note",
    "Write a short paragraph about the topic below",
    "Summarize the key facts about this subject",
    "Give an overview of the events mentioned here",
    "List the important details of this story",
    "Draft a reply to the following message",
    "Provide a brief answer to the question implied by this text",
};

}  // namespace

std::string MockTranslator::translate(const TranslationRequest& req) {
    req.validate();
    if (fails(req.text, "mt")) throw ProviderError(ProviderErrorKind::unreachable, "mock translator down");
    const std::string reverse = tag(req.target_lang, req.source_lang);
    if (req.text.starts_with(reverse)) return req.text.substr(reverse.size());
    return tag(req.source_lang, req.target_lang) + req.text;
}

QualityEstimate MockQualityEstimator::estimate_quality(std::string_view source, std::string_view translation) {
    if (source.empty() || translation.empty()) {
        throw ProviderError(ProviderErrorKind::rejected, "quality estimation needs non-empty texts", 400);
    }
    if (fails(source, "qe")) throw ProviderError(ProviderErrorKind::unreachable, "mock estimator down");

    auto fixture = opts_.qe_fixtures.find({std::string(source), std::string(translation)});
    if (fixture != opts_.qe_fixtures.end()) return checked_estimate(fixture->second, model_id());

    std::optional<std::string> directive;
    if (translation.starts_with("[mt:en>")) {
        directive = mock_directive(source, "bqe");
    } else if (translation.starts_with("[mt:")) {
        directive = mock_directive(source, "fqe");
    }
    if (directive) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(directive->data(), directive->data() + directive->size(), v);
        if (ec != std::errc{}) throw ProviderError(ProviderErrorKind::malformed_response, "bad qe directive");
        return checked_estimate(v, model_id());
    }
    if (opts_.qe_mode == MockOptions::QeMode::fixed) return checked_estimate(opts_.qe_fixed, model_id());

    std::string key = std::to_string(opts_.seed);
    key.push_back('\x1f');
    key.append(source);
    key.push_back('\x1f');
    key.append(translation);
    const double u = unit_interval(sha256_u64(key));
    return checked_estimate(opts_.qe_min + (1.0 - opts_.qe_min) * u, model_id());
}

MockGenerator::MockGenerator(MockOptions opts, std::vector<promptkit::TaskTemplate> pool,
                             promptkit::ScoringTemplate scoring)
    : opts_(std::move(opts)), pool_(std::move(pool)), scoring_(std::move(scoring)) {}

std::string MockGenerator::generate(const GenerationRequest& req) {
    req.validate();
    if (fails(req.prompt, "llm")) throw ProviderError(ProviderErrorKind::unreachable, "mock generator down");

    std::string key = std::to_string(opts_.seed) + "/" + std::to_string(req.seed.value_or(0)) + "/";
    key += req.prompt;
    const std::uint64_t h = sha256_u64(key);

    if (auto v = match_template(scoring_.body, req.prompt)) {
        return judge_completion((*v)["instruction"], (*v)["response"], h);
    }
    for (const auto& t : pool_) {
        if (auto v = match_template(t.body, req.prompt)) return task_completion(t, (*v)["response"], h);
    }
    return "Mock completion " + short_hex(h) + ".";
}

std::string MockGenerator::judge_completion(std::string_view instruction, std::string_view response,
                                            std::uint64_t h) const {
    std::string reasoning = "The response was checked against the instruction (mock review " + short_hex(h) + ").";
    auto directive = mock_directive(response, "judge");
    if (!directive) directive = mock_directive(instruction, "judge");
    if (directive && *directive == "unparseable") return reasoning + "\nI am unable to settle on a rating.";
    std::string score;
    if (directive) {
        score = *directive;
    } else if (opts_.judge_mode == MockOptions::JudgeMode::fixed) {
        score = std::to_string(opts_.fixed_score);
    } else {
        score = std::to_string(1 + static_cast<int>(h % 5));
    }
    return reasoning + "\nScore: " + score;
}

std::string MockGenerator::task_completion(const promptkit::TaskTemplate& t, std::string_view response,
                                           std::uint64_t h) const {
    using promptkit::TaskKind;
    const auto gen = mock_directive(response, "gen");
    const bool drop_label = gen && *gen == "missing_label";
    const bool misalign = gen && *gen == "misalign";
    const std::string ref = short_hex(h);

    // Content per label, in label order.
    std::vector<std::string> content(t.output_labels.size());
    switch (t.kind) {
        case TaskKind::open_instruction:
            content[0] = std::string(kOpeners[h % kOpeners.size()]) + ": " + excerpt(response, 8);
            break;
        case TaskKind::qa_with_context:
            content[0] = "Context: " + std::string(response) + "\nQuestion: What does the context above state? (ref " +
                         ref + ")";
            break;
        case TaskKind::summarization:
            content[0] = misalign ? excerpt(response, 2)
                                  : std::string(response) + "\n\nThis longer text expands on the summary above (ref " +
                                        ref + ").";
            break;
        case TaskKind::math_problem:
            content[0] = "Find the quantity whose worked answer reads as follows: " + excerpt(response, 8);
            break;
        case TaskKind::multiple_choice: {
            const std::size_t correct = (h >> 8) % 4;
            for (std::size_t li = 0; li < t.output_labels.size(); ++li) {
                const std::string& label = t.output_labels[li];
                if (label == "Answer:") {
                    content[li] = std::string(1, static_cast<char>('A' + correct));
                } else if (label.size() == 2 && label[1] == '.' && label[0] >= 'A' && label[0] <= 'D') {
                    const auto idx = static_cast<std::size_t>(label[0] - 'A');
                    content[li] = idx == correct && !misalign
                                      ? std::string(response)
                                      : "Distractor " + std::string(1, label[0]) + " for item " + ref;
                } else {
                    content[li] = "Which of the following statements matches the passage? (item " + ref + ")";
                }
            }
            break;
        }
    }

    std::string out;
    const std::size_t n = t.output_labels.size();
    for (std::size_t li = 0; li < n; ++li) {
        const bool last = li + 1 == n;
        if (drop_label && last && n > 1) break;
        if (!out.empty()) out += "\n\n";
        out += t.output_labels[li];
        // A single-label completion with the label dropped keeps an empty section.
        out += drop_label && n == 1 ? "\n" : (t.kind == TaskKind::multiple_choice && li > 0 ? " " : "\n");
        if (!(drop_label && n == 1)) out += content[li];
    }
    return out;
}

ProviderSet make_mock_providers(const MockOptions& opts, std::vector<promptkit::TaskTemplate> pool,
                                promptkit::ScoringTemplate scoring) {
    return {std::make_shared<MockGenerator>(opts, std::move(pool), std::move(scoring)),
            std::make_shared<MockTranslator>(), std::make_shared<MockQualityEstimator>(opts)};
}

}  // namespace revgen::providers
