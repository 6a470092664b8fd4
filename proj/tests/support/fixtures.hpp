#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fixture {

std::string path(const std::string& name);

struct VerdictCase {
    std::string kind;        // well_formed | multi_score | missing_line | out_of_range | decorated
    std::string completion;
    std::string expect;      // "1".."5", or a failure reason
};
std::vector<VerdictCase> verdict_cases();

struct McqCase {
    std::string name;
    std::string completion;
    std::string response;
    std::string expect;  // "ok" or an alignment violation
};
std::vector<McqCase> mcq_cases();

struct ImperativeCase {
    std::string instruction;
    std::optional<std::string> verb;
    std::optional<std::string> noun;
};
std::vector<ImperativeCase> imperative_cases();

struct AccountingCase {
    std::string text;
    std::string expect;  // "accepted" or a reject reason
};
std::vector<AccountingCase> accounting_cases();

}  // namespace fixture
