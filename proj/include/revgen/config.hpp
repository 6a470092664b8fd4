#pragma once

#include "revgen/corpus.hpp"
#include "revgen/mock_providers.hpp"
#include "revgen/templates.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace revgen::pipeline {

struct EndpointConfig {
    std::string url;        // literal base URL, or
    std::string url_env;    // name of the env var holding it
    std::string token_env;  // name of the env var holding the bearer token
    std::string path = "/";
    std::string model;
    std::string output_pointer = "/output";
    std::optional<int> timeout_ms;
};

struct ProvidersConfig {
    enum class Mode { mock, http };
    Mode mode = Mode::mock;
    providers::MockOptions mock;  // seed is taken from the run seed
    EndpointConfig llm;
    EndpointConfig mt;
    EndpointConfig qe;
    int max_retries = 3;
    int backoff_ms = 500;
};

struct SamplingParams {
    std::size_t max_output_chars = 4000;
    double temperature = 0.7;
    double top_p = 0.9;
};

struct RunConfig {
    std::string language;
    std::uint64_t seed = 0;
    int lambda = 3;
    double qe_threshold = 0.7;
    corpus::FilterConfig filter;
    corpus::FragmentSource source = corpus::FragmentSource::monolingual_corpus;
    std::size_t sample_size = 0;  // 0 keeps every accepted fragment

    std::filesystem::path input;
    std::filesystem::path templates;         // empty: shipped pool
    std::filesystem::path scoring_template;  // empty: shipped scoring prompt
    std::filesystem::path output_dir;

    std::size_t workers = 16;
    std::size_t max_in_flight = 8;
    std::size_t max_provider_errors = 100;

    SamplingParams generation;
    SamplingParams judge{2000, 0.0, 1.0};
    ProvidersConfig providers;

    /// Throws ConfigError. Checks value ranges and that referenced files exist.
    void validate() const;

    std::vector<promptkit::TaskTemplate> load_pool() const;
    promptkit::ScoringTemplate load_scoring() const;

    /// Digest over everything that determines the run's output bytes
    /// (including the input file and template files), excluding concurrency
    /// knobs, output location, endpoints and secrets.
    std::string digest() const;
};

/// Relative paths in the file are resolved against `base_dir`.
RunConfig parse_run_config(std::string_view yaml_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

std::string file_digest(const std::filesystem::path& path);

}  // namespace revgen::pipeline
