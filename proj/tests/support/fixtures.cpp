#include "support/fixtures.hpp"

#include "json.hpp"

#include <fstream>
#include <stdexcept>

namespace fixture {

std::string path(const std::string& name) { return std::string(REVGEN_FIXTURES) + "/" + name; }

namespace {

std::vector<nlohmann::json> read_jsonl(const std::string& name) {
    std::ifstream in(path(name));
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::vector<nlohmann::json> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        out.push_back(nlohmann::json::parse(line));
    }
    return out;
}

std::optional<std::string> opt(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<std::string>();
}

}  // namespace

std::vector<VerdictCase> verdict_cases() {
    std::vector<VerdictCase> out;
    for (const auto& j : read_jsonl("verdicts.jsonl")) {
        out.push_back({j.at("kind"), j.at("completion"), j.at("expect")});
    }
    return out;
}

std::vector<McqCase> mcq_cases() {
    std::vector<McqCase> out;
    for (const auto& j : read_jsonl("mcq_alignment.jsonl")) {
        out.push_back({j.at("name"), j.at("completion"), j.at("response"), j.at("expect")});
    }
    return out;
}

std::vector<ImperativeCase> imperative_cases() {
    std::vector<ImperativeCase> out;
    for (const auto& j : read_jsonl("imperatives.jsonl")) {
        out.push_back({j.at("instruction"), opt(j, "verb"), opt(j, "noun")});
    }
    return out;
}

std::vector<AccountingCase> accounting_cases() {
    std::vector<AccountingCase> out;
    for (const auto& j : read_jsonl("accounting.jsonl")) out.push_back({j.at("text"), j.at("expect")});
    return out;
}

}  // namespace fixture
