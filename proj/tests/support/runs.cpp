#include "support/runs.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace runs {

void write_summarization_pool(const std::filesystem::path& path) {
    oracle::write_file(path,
                       "templates:\n"
                       "  - id: summary_only\n"
                       "    kind: summarization\n"
                       "    output_labels: [\"Longer Text:\"]\n"
                       "    assembly: \"Summarize the following text:\\n\\n{{Longer Text:}}\"\n"
                       "    body: \"Response:{{response}}\\n\\nExpand the response into a longer text.\\n\\nLonger Text:\\n\"\n");
}

revgen::pipeline::RunConfig mock_config(const std::filesystem::path& dir, const std::vector<std::string>& lines,
                                        std::uint64_t seed) {
    std::string input;
    for (const auto& l : lines) input += l + "\n";
    oracle::write_file(dir / "input.txt", input);
    revgen::pipeline::RunConfig cfg;
    cfg.language = "spa";
    cfg.seed = seed;
    cfg.input = dir / "input.txt";
    cfg.output_dir = dir / "run";
    cfg.workers = 8;
    cfg.max_in_flight = 8;
    return cfg;
}

revgen::pipeline::RunConfig with_fixed_mocks(revgen::pipeline::RunConfig cfg) {
    using revgen::providers::MockOptions;
    cfg.providers.mock.judge_mode = MockOptions::JudgeMode::fixed;
    cfg.providers.mock.fixed_score = 4;
    cfg.providers.mock.qe_mode = MockOptions::QeMode::fixed;
    cfg.providers.mock.qe_fixed = 0.9;
    return cfg;
}

revgen::pipeline::RunConfig accounting_config(const std::filesystem::path& dir) {
    std::vector<std::string> lines;
    for (const auto& c : fixture::accounting_cases()) lines.push_back(c.text);
    auto cfg = with_fixed_mocks(mock_config(dir, lines));
    cfg.templates = dir / "pool.yaml";
    write_summarization_pool(cfg.templates);
    return cfg;
}

std::map<std::string, std::size_t> accounting_expectations() {
    std::map<std::string, std::size_t> out;
    for (const auto& c : fixture::accounting_cases()) ++out[c.expect];
    return out;
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& run_dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(run_dir)) {
        out[e.path().filename().string()] = oracle::read_file(e.path());
    }
    return out;
}

}  // namespace runs
