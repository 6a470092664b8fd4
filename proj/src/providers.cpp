#include "revgen/providers.hpp"

#include "revgen/errors.hpp"

#include <algorithm>
#include <cmath>

namespace revgen::providers {

void GenerationRequest::validate() const {
    if (prompt.empty()) throw PreconditionError("generation prompt must be non-empty");
    if (max_output_chars == 0) throw PreconditionError("max_output_chars must be > 0");
    if (!(temperature >= 0.0)) throw PreconditionError("temperature must be >= 0");
    if (!(top_p > 0.0 && top_p <= 1.0)) throw PreconditionError("top_p must lie in (0, 1]");
}

void TranslationRequest::validate() const {
    if (text.empty()) throw PreconditionError("translation text must be non-empty");
    if (source_lang.empty() || target_lang.empty()) throw PreconditionError("translation languages must be set");
    if (source_lang == target_lang) throw PreconditionError("source and target language must differ");
}

std::string_view to_string(ProviderErrorKind k) {
    switch (k) {
        case ProviderErrorKind::unreachable: return "provider_unreachable";
        case ProviderErrorKind::rejected: return "provider_rejected";
        case ProviderErrorKind::timeout: return "timeout";
        case ProviderErrorKind::empty_completion: return "empty_completion";
        case ProviderErrorKind::range_violation: return "range_violation";
        case ProviderErrorKind::malformed_response: return "malformed_response";
    }
    return "unknown";
}

ProviderError::ProviderError(ProviderErrorKind kind, std::string message, int status, std::string body,
                             int attempts)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      status_(status),
      body_(std::move(body)),
      attempts_(attempts) {}

QualityEstimate checked_estimate(double score, std::string estimator_id) {
    if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
        throw ProviderError(ProviderErrorKind::range_violation,
                            "quality estimate " + std::to_string(score) + " outside [0,1]");
    }
    return {score, std::move(estimator_id)};
}

InFlightLimiter::InFlightLimiter(std::size_t max_in_flight) : max_(max_in_flight) {
    if (max_ == 0) throw ConfigError("max_in_flight must be >= 1");
}

void InFlightLimiter::acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < max_; });
    ++in_flight_;
    std::size_t prev = peak_.load();
    while (prev < in_flight_ && !peak_.compare_exchange_weak(prev, in_flight_)) {
    }
}

void InFlightLimiter::release() {
    {
        std::lock_guard lock(mu_);
        --in_flight_;
    }
    cv_.notify_one();
}

namespace {

class LimitedGenerator final : public TextGenerator {
public:
    LimitedGenerator(std::shared_ptr<TextGenerator> inner, std::size_t n)
        : inner_(std::move(inner)), limiter_(n) {}
    std::string generate(const GenerationRequest& req) override {
        InFlightLimiter::Slot slot(limiter_);
        return inner_->generate(req);
    }
    std::string model_id() const override { return inner_->model_id(); }

private:
    std::shared_ptr<TextGenerator> inner_;
    InFlightLimiter limiter_;
};

class LimitedTranslator final : public Translator {
public:
    LimitedTranslator(std::shared_ptr<Translator> inner, std::size_t n) : inner_(std::move(inner)), limiter_(n) {}
    std::string translate(const TranslationRequest& req) override {
        InFlightLimiter::Slot slot(limiter_);
        return inner_->translate(req);
    }
    std::string model_id() const override { return inner_->model_id(); }

private:
    std::shared_ptr<Translator> inner_;
    InFlightLimiter limiter_;
};

class LimitedEstimator final : public QualityEstimator {
public:
    LimitedEstimator(std::shared_ptr<QualityEstimator> inner, std::size_t n)
        : inner_(std::move(inner)), limiter_(n) {}
    QualityEstimate estimate_quality(std::string_view source, std::string_view translation) override {
        InFlightLimiter::Slot slot(limiter_);
        return inner_->estimate_quality(source, translation);
    }
    std::string model_id() const override { return inner_->model_id(); }

private:
    std::shared_ptr<QualityEstimator> inner_;
    InFlightLimiter limiter_;
};

}  // namespace

std::shared_ptr<TextGenerator> limit_in_flight(std::shared_ptr<TextGenerator> inner, std::size_t n) {
    return std::make_shared<LimitedGenerator>(std::move(inner), n);
}

std::shared_ptr<Translator> limit_in_flight(std::shared_ptr<Translator> inner, std::size_t n) {
    return std::make_shared<LimitedTranslator>(std::move(inner), n);
}

std::shared_ptr<QualityEstimator> limit_in_flight(std::shared_ptr<QualityEstimator> inner, std::size_t n) {
    return std::make_shared<LimitedEstimator>(std::move(inner), n);
}

ProviderSet limit_in_flight(const ProviderSet& set, std::size_t n) {
    return {limit_in_flight(set.llm, n), limit_in_flight(set.mt, n), limit_in_flight(set.qe, n)};
}

}  // namespace revgen::providers
