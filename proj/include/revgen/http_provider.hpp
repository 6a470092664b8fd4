#pragma once

#include "revgen/providers.hpp"

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <string>

namespace revgen::providers {

/// One remote service speaking the generic contract:
///   POST {"task": ..., "input": {...}, "params": {...}}
///   200  {"output": string|number, "meta": {...}}
struct HttpEndpoint {
    std::string base_url;          // scheme://host[:port]
    std::string path = "/";
    std::string auth_token;        // sent as "Authorization: Bearer ..."; never persisted
    std::string model_id;          // provenance only
    std::string output_pointer = "/output";  // JSON pointer into the response body
    std::chrono::milliseconds timeout{30'000};
    int max_retries = 3;
    std::chrono::milliseconds backoff_base{500};
    std::chrono::milliseconds backoff_max{8'000};
};

struct HttpCallStats {
    std::atomic<std::size_t> calls{0};
    std::atomic<std::size_t> attempts{0};
    std::atomic<std::size_t> retries{0};
    std::atomic<std::size_t> failures{0};
};

/// Posts task requests and retries transient failures (connection errors,
/// timeouts, 408, 429, 5xx) with capped exponential backoff.
class HttpJsonClient {
public:
    explicit HttpJsonClient(HttpEndpoint endpoint);
    ~HttpJsonClient();

    /// Returns the serialized JSON value found at the endpoint's output pointer.
    /// `input_json` and `params_json` are serialized JSON objects.
    std::string post(std::string_view task, const std::string& input_json, const std::string& params_json);

    const HttpEndpoint& endpoint() const noexcept { return endpoint_; }
    const HttpCallStats& stats() const noexcept { return stats_; }

private:
    HttpEndpoint endpoint_;
    HttpCallStats stats_;
};

class HttpGenerator final : public TextGenerator {
public:
    explicit HttpGenerator(HttpEndpoint endpoint) : client_(std::move(endpoint)) {}
    std::string generate(const GenerationRequest& req) override;
    std::string model_id() const override { return client_.endpoint().model_id; }
    const HttpCallStats& stats() const noexcept { return client_.stats(); }

private:
    HttpJsonClient client_;
};

class HttpTranslator final : public Translator {
public:
    explicit HttpTranslator(HttpEndpoint endpoint) : client_(std::move(endpoint)) {}
    std::string translate(const TranslationRequest& req) override;
    std::string model_id() const override { return client_.endpoint().model_id; }
    const HttpCallStats& stats() const noexcept { return client_.stats(); }

private:
    HttpJsonClient client_;
};

class HttpQualityEstimator final : public QualityEstimator {
public:
    explicit HttpQualityEstimator(HttpEndpoint endpoint) : client_(std::move(endpoint)) {}
    QualityEstimate estimate_quality(std::string_view source, std::string_view translation) override;
    std::string model_id() const override { return client_.endpoint().model_id; }
    const HttpCallStats& stats() const noexcept { return client_.stats(); }

private:
    HttpJsonClient client_;
};

}  // namespace revgen::providers
