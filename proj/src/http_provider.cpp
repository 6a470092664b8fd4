#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "revgen/http_provider.hpp"

#include "revgen/errors.hpp"

#include "json.hpp"

#include <thread>

namespace revgen::providers {

using nlohmann::json;

namespace {

bool transient_status(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

HttpJsonClient::HttpJsonClient(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {
    if (endpoint_.base_url.empty()) throw ConfigError("HTTP provider needs a base URL");
    if (endpoint_.max_retries < 0) throw ConfigError("max_retries must be >= 0");
}

HttpJsonClient::~HttpJsonClient() = default;

std::string HttpJsonClient::post(std::string_view task, const std::string& input_json,
                                 const std::string& params_json) {
    const std::string body = json{{"task", task},
                                  {"input", json::parse(input_json)},
                                  {"params", json::parse(params_json)}}
                                 .dump();
    ++stats_.calls;

    httplib::Client client(endpoint_.base_url);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(endpoint_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers headers;
    if (!endpoint_.auth_token.empty()) headers.emplace("Authorization", "Bearer " + endpoint_.auth_token);

    const int max_attempts = endpoint_.max_retries + 1;
    ProviderErrorKind last_kind = ProviderErrorKind::unreachable;
    std::string last_message;
    int last_status = 0;
    std::string last_body;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        if (attempt > 1) {
            ++stats_.retries;
            auto delay = endpoint_.backoff_base * (1LL << std::min(attempt - 2, 20));
            std::this_thread::sleep_for(std::min<std::chrono::milliseconds>(delay, endpoint_.backoff_max));
        }
        ++stats_.attempts;
        const auto started = std::chrono::steady_clock::now();
        auto res = client.Post(endpoint_.path, headers, body, "application/json");
        if (!res) {
            const auto err = res.error();
            const auto elapsed = std::chrono::steady_clock::now() - started;
            const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                                   (err == httplib::Error::Read && elapsed >= endpoint_.timeout);
            last_kind = timed_out ? ProviderErrorKind::timeout : ProviderErrorKind::unreachable;
            last_message = httplib::to_string(err);
            last_status = 0;
            continue;
        }
        if (res->status == 200) {
            json parsed;
            try {
                parsed = json::parse(res->body);
                const json& out = parsed.at(json::json_pointer(endpoint_.output_pointer));
                return out.dump();
            } catch (const json::exception& e) {
                ++stats_.failures;
                throw ProviderError(ProviderErrorKind::malformed_response, e.what(), res->status, res->body, attempt);
            }
        }
        last_kind = ProviderErrorKind::rejected;
        last_status = res->status;
        last_body = res->body;
        last_message = "HTTP status " + std::to_string(res->status);
        if (!transient_status(res->status)) {
            ++stats_.failures;
            throw ProviderError(last_kind, last_message, last_status, last_body, attempt);
        }
    }
    ++stats_.failures;
    throw ProviderError(last_kind, last_message + " after " + std::to_string(max_attempts) + " attempts",
                        last_status, last_body, max_attempts);
}

std::string HttpGenerator::generate(const GenerationRequest& req) {
    req.validate();
    json params = {{"max_output_chars", req.max_output_chars},
                   {"temperature", req.temperature},
                   {"top_p", req.top_p}};
    if (req.seed) params["seed"] = *req.seed;
    const json out = json::parse(client_.post("generate", json{{"prompt", req.prompt}}.dump(), params.dump()));
    if (!out.is_string()) throw ProviderError(ProviderErrorKind::malformed_response, "generation output is not a string");
    auto text = out.get<std::string>();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ProviderError(ProviderErrorKind::empty_completion, "empty completion");
    }
    return text;
}

std::string HttpTranslator::translate(const TranslationRequest& req) {
    req.validate();
    const json input = {{"text", req.text}, {"source_lang", req.source_lang}, {"target_lang", req.target_lang}};
    const json out = json::parse(client_.post("translate", input.dump(), "{}"));
    if (!out.is_string()) throw ProviderError(ProviderErrorKind::malformed_response, "translation output is not a string");
    auto text = out.get<std::string>();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ProviderError(ProviderErrorKind::empty_completion, "empty translation");
    }
    return text;
}

QualityEstimate HttpQualityEstimator::estimate_quality(std::string_view source, std::string_view translation) {
    if (source.empty() || translation.empty()) throw PreconditionError("quality estimation needs non-empty texts");
    const json input = {{"source", source}, {"translation", translation}};
    const json out = json::parse(client_.post("qe", input.dump(), "{}"));
    if (!out.is_number()) throw ProviderError(ProviderErrorKind::malformed_response, "qe output is not a number");
    return checked_estimate(out.get<double>(), model_id());
}

}  // namespace revgen::providers
