#include "revgen/config.hpp"

#include "revgen/errors.hpp"
#include "revgen/hash.hpp"
#include "revgen/languages.hpp"

#include "json.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

namespace revgen::pipeline {

using nlohmann::ordered_json;

namespace {

template <typename T>
void read(const YAML::Node& node, const char* key, T& out) {
    if (const YAML::Node v = node[key]) {
        try {
            out = v.as<T>();
        } catch (const YAML::Exception&) {
            throw ConfigError(std::string("config: bad value for '") + key + "'");
        }
    }
}

void read_path(const YAML::Node& node, const char* key, const std::filesystem::path& base,
               std::filesystem::path& out) {
    std::string s;
    read(node, key, s);
    if (s.empty()) return;
    std::filesystem::path p(s);
    out = p.is_absolute() ? p : base / p;
}

EndpointConfig read_endpoint(const YAML::Node& node) {
    EndpointConfig e;
    if (!node) return e;
    read(node, "url", e.url);
    read(node, "url_env", e.url_env);
    read(node, "token_env", e.token_env);
    read(node, "path", e.path);
    read(node, "model", e.model);
    read(node, "output_pointer", e.output_pointer);
    if (node["timeout_ms"]) e.timeout_ms = node["timeout_ms"].as<int>();
    if (node["token"]) throw ConfigError("config: tokens must come from environment variables (use token_env)");
    return e;
}

void read_sampling(const YAML::Node& node, SamplingParams& p) {
    if (!node) return;
    read(node, "max_output_chars", p.max_output_chars);
    read(node, "temperature", p.temperature);
    read(node, "top_p", p.top_p);
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string file_digest(const std::filesystem::path& path) { return sha256_hex(read_text(path)); }

RunConfig parse_run_config(std::string_view yaml_text, const std::filesystem::path& base_dir) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config is not valid YAML: ") + e.what());
    }
    if (!root.IsMap()) throw ConfigError("config must be a mapping");

    RunConfig c;
    try {
        read(root, "language", c.language);
        read(root, "seed", c.seed);
        read(root, "lambda", c.lambda);
        read(root, "qe_threshold", c.qe_threshold);
        read(root, "sample_size", c.sample_size);
        std::string source;
        read(root, "source", source);
        if (!source.empty()) c.source = corpus::parse_source(source);
        read_path(root, "input", base_dir, c.input);
        read_path(root, "templates", base_dir, c.templates);
        read_path(root, "scoring_template", base_dir, c.scoring_template);
        read_path(root, "output_dir", base_dir, c.output_dir);
        read(root, "workers", c.workers);
        read(root, "max_in_flight", c.max_in_flight);
        read(root, "max_provider_errors", c.max_provider_errors);

        if (const YAML::Node f = root["filter"]) {
            read(f, "min_chars", c.filter.min_chars);
            read(f, "max_chars", c.filter.max_chars);
            read(f, "max_uppercase_ratio", c.filter.max_uppercase_ratio);
            read(f, "max_symbol_ratio", c.filter.max_symbol_ratio);
            read(f, "near_dup_shingle_size", c.filter.near_dup_shingle_size);
            read(f, "near_dup_jaccard_threshold", c.filter.near_dup_jaccard_threshold);
        }
        read_sampling(root["generation"], c.generation);
        read_sampling(root["judge"], c.judge);

        if (const YAML::Node p = root["providers"]) {
            std::string mode = "mock";
            read(p, "mode", mode);
            if (mode == "mock") {
                c.providers.mode = ProvidersConfig::Mode::mock;
            } else if (mode == "http") {
                c.providers.mode = ProvidersConfig::Mode::http;
            } else {
                throw ConfigError("config: providers.mode must be 'mock' or 'http'");
            }
            read(p, "max_retries", c.providers.max_retries);
            read(p, "backoff_ms", c.providers.backoff_ms);
            c.providers.llm = read_endpoint(p["llm"]);
            c.providers.mt = read_endpoint(p["mt"]);
            c.providers.qe = read_endpoint(p["qe"]);
            if (const YAML::Node m = p["mock"]) {
                auto& mo = c.providers.mock;
                std::string judge = "hash";
                read(m, "judge", judge);
                if (judge == "hash") {
                    mo.judge_mode = providers::MockOptions::JudgeMode::hash;
                } else if (judge == "fixed") {
                    mo.judge_mode = providers::MockOptions::JudgeMode::fixed;
                } else {
                    throw ConfigError("config: providers.mock.judge must be 'hash' or 'fixed'");
                }
                read(m, "judge_score", mo.fixed_score);
                std::string qe = "hash";
                read(m, "qe", qe);
                if (qe == "hash") {
                    mo.qe_mode = providers::MockOptions::QeMode::hash;
                } else if (qe == "fixed") {
                    mo.qe_mode = providers::MockOptions::QeMode::fixed;
                } else {
                    throw ConfigError("config: providers.mock.qe must be 'hash' or 'fixed'");
                }
                read(m, "qe_score", mo.qe_fixed);
                read(m, "qe_min", mo.qe_min);
            }
        }
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    c.providers.mock.seed = c.seed;
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_text(path), path.parent_path());
}

void RunConfig::validate() const {
    if (!is_known_language(language)) throw ConfigError("config: unknown language code '" + language + "'");
    if (lambda < 1 || lambda > 5) throw ConfigError("config: lambda must lie in 1..5");
    if (!(qe_threshold >= 0.0 && qe_threshold <= 1.0)) throw ConfigError("config: qe_threshold must lie in [0,1]");
    filter.validate();
    if (input.empty()) throw ConfigError("config: 'input' is required");
    if (!std::filesystem::is_regular_file(input)) throw ConfigError("config: input file not found: " + input.string());
    if (!templates.empty() && !std::filesystem::is_regular_file(templates)) {
        throw ConfigError("config: template pool not found: " + templates.string());
    }
    if (!scoring_template.empty() && !std::filesystem::is_regular_file(scoring_template)) {
        throw ConfigError("config: scoring template not found: " + scoring_template.string());
    }
    if (output_dir.empty()) throw ConfigError("config: 'output_dir' is required");
    if (workers == 0) throw ConfigError("config: workers must be >= 1");
    if (max_in_flight == 0) throw ConfigError("config: max_in_flight must be >= 1");
    for (const auto* p : {&generation, &judge}) {
        if (p->max_output_chars == 0) throw ConfigError("config: max_output_chars must be > 0");
        if (!(p->temperature >= 0.0)) throw ConfigError("config: temperature must be >= 0");
        if (!(p->top_p > 0.0 && p->top_p <= 1.0)) throw ConfigError("config: top_p must lie in (0,1]");
    }
    if (providers.mode == ProvidersConfig::Mode::http) {
        for (const auto* e : {&providers.llm, &providers.mt, &providers.qe}) {
            if (e->url.empty() && e->url_env.empty()) throw ConfigError("config: every HTTP provider needs url or url_env");
        }
        if (providers.max_retries < 0) throw ConfigError("config: max_retries must be >= 0");
    } else {
        const auto& m = providers.mock;
        if (m.fixed_score < 1 || m.fixed_score > 5) throw ConfigError("config: mock judge_score must lie in 1..5");
        if (!(m.qe_min >= 0.0 && m.qe_min <= 1.0)) throw ConfigError("config: mock qe_min must lie in [0,1]");
        if (!(m.qe_fixed >= 0.0 && m.qe_fixed <= 1.0)) throw ConfigError("config: mock qe_score must lie in [0,1]");
    }
    load_pool();
    load_scoring();
}

std::vector<promptkit::TaskTemplate> RunConfig::load_pool() const {
    try {
        return templates.empty() ? promptkit::default_task_pool() : promptkit::load_task_pool(templates);
    } catch (const TemplateError& e) {
        throw ConfigError(e.what());
    }
}

promptkit::ScoringTemplate RunConfig::load_scoring() const {
    try {
        return scoring_template.empty() ? promptkit::default_scoring_template()
                                        : promptkit::load_scoring_template(scoring_template);
    } catch (const TemplateError& e) {
        throw ConfigError(e.what());
    }
}

std::string RunConfig::digest() const {
    auto sampling = [](const SamplingParams& p) {
        return ordered_json{{"max_output_chars", p.max_output_chars}, {"temperature", p.temperature}, {"top_p", p.top_p}};
    };
    ordered_json j = {
        {"language", language},
        {"seed", seed},
        {"lambda", lambda},
        {"qe_threshold", qe_threshold},
        {"filter",
         {{"min_chars", filter.min_chars},
          {"max_chars", filter.max_chars},
          {"max_uppercase_ratio", filter.max_uppercase_ratio},
          {"max_symbol_ratio", filter.max_symbol_ratio},
          {"near_dup_shingle_size", filter.near_dup_shingle_size},
          {"near_dup_jaccard_threshold", filter.near_dup_jaccard_threshold}}},
        {"source", corpus::to_string(source)},
        {"sample_size", sample_size},
        {"generation", sampling(generation)},
        {"judge", sampling(judge)},
        {"input_digest", file_digest(input)},
        {"templates_digest", templates.empty() ? sha256_hex(promptkit::default_task_pool_yaml()) : file_digest(templates)},
        {"scoring_digest",
         scoring_template.empty() ? sha256_hex(promptkit::default_scoring_yaml()) : file_digest(scoring_template)},
    };
    if (providers.mode == ProvidersConfig::Mode::mock) {
        const auto& m = providers.mock;
        j["providers"] = {{"mode", "mock"},
                          {"judge_mode", m.judge_mode == providers::MockOptions::JudgeMode::hash ? "hash" : "fixed"},
                          {"judge_score", m.fixed_score},
                          {"qe_mode", m.qe_mode == providers::MockOptions::QeMode::hash ? "hash" : "fixed"},
                          {"qe_score", m.qe_fixed},
                          {"qe_min", m.qe_min}};
    } else {
        j["providers"] = {{"mode", "http"},
                          {"llm_model", providers.llm.model},
                          {"mt_model", providers.mt.model},
                          {"qe_model", providers.qe.model}};
    }
    return sha256_hex(j.dump());
}

}  // namespace revgen::pipeline
