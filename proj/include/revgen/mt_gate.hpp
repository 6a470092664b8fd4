#pragma once

#include "revgen/corpus.hpp"
#include "revgen/providers.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace revgen::mt_gate {

inline constexpr double kDefaultQeThreshold = 0.7;

enum class Direction { x_to_en, en_to_x };

std::string_view to_string(Direction d);

struct GatedTranslation {
    std::string text;
    Direction direction = Direction::x_to_en;
    providers::QualityEstimate qe;
    bool passed = false;
};

enum class GateDecision { pass, fail };

/// pass iff qe.score >= threshold. Throws PreconditionError for a threshold outside [0,1].
GateDecision apply_qe_gate(const providers::QualityEstimate& qe, double threshold);

/// A provider failure tagged with the record it happened on.
class GateError : public std::runtime_error {
public:
    GateError(std::string record_id, const providers::ProviderError& cause);
    const std::string& record_id() const noexcept { return record_id_; }
    providers::ProviderErrorKind kind() const noexcept { return kind_; }

private:
    std::string record_id_;
    providers::ProviderErrorKind kind_;
};

struct GateContext {
    providers::Translator& mt;
    providers::QualityEstimator& qe;
    double threshold = kDefaultQeThreshold;
};

/// R_x -> R_en, with QE computed against the original fragment text.
GatedTranslation forward_translate(const corpus::TextFragment& fragment, GateContext ctx);

/// I_en -> I_x, with QE computed as source = I_en, hypothesis = I_x.
GatedTranslation back_translate(std::string_view instruction_en, std::string_view target_lang, GateContext ctx,
                                std::string_view record_id = {});

}  // namespace revgen::mt_gate
