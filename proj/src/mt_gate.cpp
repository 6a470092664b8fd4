#include "revgen/mt_gate.hpp"

#include "revgen/errors.hpp"
#include "revgen/languages.hpp"

namespace revgen::mt_gate {

std::string_view to_string(Direction d) { return d == Direction::x_to_en ? "x_to_en" : "en_to_x"; }

GateDecision apply_qe_gate(const providers::QualityEstimate& qe, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw PreconditionError("qe threshold must lie in [0,1]");
    return qe.score >= threshold ? GateDecision::pass : GateDecision::fail;
}

GateError::GateError(std::string record_id, const providers::ProviderError& cause)
    : std::runtime_error("record " + record_id + ": " + cause.what()),
      record_id_(std::move(record_id)),
      kind_(cause.kind()) {}

namespace {

GatedTranslation gated(std::string text, Direction dir, providers::QualityEstimate qe, double threshold) {
    GatedTranslation g;
    g.passed = apply_qe_gate(qe, threshold) == GateDecision::pass;
    g.text = std::move(text);
    g.direction = dir;
    g.qe = std::move(qe);
    return g;
}

}  // namespace

GatedTranslation forward_translate(const corpus::TextFragment& fragment, GateContext ctx) {
    if (fragment.status != corpus::FragmentStatus::accepted) {
        throw PreconditionError("forward_translate requires an accepted fragment");
    }
    try {
        std::string en = ctx.mt.translate({fragment.text, fragment.language, std::string(kEnglish)});
        auto qe = ctx.qe.estimate_quality(fragment.text, en);
        return gated(std::move(en), Direction::x_to_en, std::move(qe), ctx.threshold);
    } catch (const providers::ProviderError& e) {
        throw GateError(fragment.id, e);
    }
}

GatedTranslation back_translate(std::string_view instruction_en, std::string_view target_lang, GateContext ctx,
                                std::string_view record_id) {
    if (instruction_en.empty()) throw PreconditionError("instruction must be non-empty");
    try {
        std::string x = ctx.mt.translate({std::string(instruction_en), std::string(kEnglish), std::string(target_lang)});
        auto qe = ctx.qe.estimate_quality(instruction_en, x);
        return gated(std::move(x), Direction::en_to_x, std::move(qe), ctx.threshold);
    } catch (const providers::ProviderError& e) {
        throw GateError(std::string(record_id), e);
    }
}

}  // namespace revgen::mt_gate
