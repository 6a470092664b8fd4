#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace revgen::providers {

struct GenerationRequest {
    std::string prompt;
    std::size_t max_output_chars = 4000;
    double temperature = 0.7;
    double top_p = 0.9;
    std::optional<std::uint64_t> seed;

    /// Throws PreconditionError.
    void validate() const;
};

struct TranslationRequest {
    std::string text;
    std::string source_lang;
    std::string target_lang;

    void validate() const;
};

struct QualityEstimate {
    double score = 0.0;
    std::string estimator_id;

    friend bool operator==(const QualityEstimate&, const QualityEstimate&) = default;
};

enum class ProviderErrorKind {
    unreachable,
    rejected,
    timeout,
    empty_completion,
    range_violation,
    malformed_response,
};

std::string_view to_string(ProviderErrorKind k);

class ProviderError : public std::runtime_error {
public:
    ProviderError(ProviderErrorKind kind, std::string message, int status = 0, std::string body = {},
                  int attempts = 1);

    ProviderErrorKind kind() const noexcept { return kind_; }
    int status() const noexcept { return status_; }
    const std::string& body() const noexcept { return body_; }
    int attempts() const noexcept { return attempts_; }

private:
    ProviderErrorKind kind_;
    int status_;
    std::string body_;
    int attempts_;
};

class TextGenerator {
public:
    virtual ~TextGenerator() = default;
    virtual std::string generate(const GenerationRequest& req) = 0;
    virtual std::string model_id() const = 0;
};

class Translator {
public:
    virtual ~Translator() = default;
    virtual std::string translate(const TranslationRequest& req) = 0;
    virtual std::string model_id() const = 0;
};

class QualityEstimator {
public:
    virtual ~QualityEstimator() = default;
    virtual QualityEstimate estimate_quality(std::string_view source, std::string_view translation) = 0;
    virtual std::string model_id() const = 0;
};

/// Throws range_violation unless 0 <= score <= 1.
QualityEstimate checked_estimate(double score, std::string estimator_id);

/// Counting gate capping concurrent calls. Tracks the peak it has admitted.
class InFlightLimiter {
public:
    explicit InFlightLimiter(std::size_t max_in_flight);

    void acquire();
    void release();
    std::size_t max_in_flight() const noexcept { return max_; }
    std::size_t peak() const noexcept { return peak_.load(); }

    class Slot {
    public:
        explicit Slot(InFlightLimiter& l) : limiter_(l) { limiter_.acquire(); }
        ~Slot() { limiter_.release(); }
        Slot(const Slot&) = delete;
        Slot& operator=(const Slot&) = delete;

    private:
        InFlightLimiter& limiter_;
    };

private:
    std::size_t max_;
    std::size_t in_flight_ = 0;
    std::atomic<std::size_t> peak_{0};
    std::mutex mu_;
    std::condition_variable cv_;
};

/// Wrappers that route every call of an inner provider through a limiter.
std::shared_ptr<TextGenerator> limit_in_flight(std::shared_ptr<TextGenerator> inner, std::size_t max_in_flight);
std::shared_ptr<Translator> limit_in_flight(std::shared_ptr<Translator> inner, std::size_t max_in_flight);
std::shared_ptr<QualityEstimator> limit_in_flight(std::shared_ptr<QualityEstimator> inner,
                                                  std::size_t max_in_flight);

/// The three capabilities a pipeline run needs.
struct ProviderSet {
    std::shared_ptr<TextGenerator> llm;
    std::shared_ptr<Translator> mt;
    std::shared_ptr<QualityEstimator> qe;
};

ProviderSet limit_in_flight(const ProviderSet& set, std::size_t max_in_flight);

}  // namespace revgen::providers
