#pragma once

#include "revgen/dataset.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace revgen::report {

struct VerbNoun {
    std::string verb;
    std::string noun;

    friend bool operator==(const VerbNoun&, const VerbNoun&) = default;
};

struct VerbNounPair {
    std::string verb;
    std::string noun;
    std::size_t count = 0;
};

/// Source of (root verb, direct object) pairs for English instructions.
class VerbNounAnalyzer {
public:
    virtual ~VerbNounAnalyzer() = default;
    virtual std::optional<VerbNoun> analyze(std::string_view record_id, std::string_view instruction_en) const = 0;
};

/// Shallow extractor: a leading imperative verb from a fixed lexicon, then
/// the head of the first noun phrase after it.
class RuleBasedAnalyzer final : public VerbNounAnalyzer {
public:
    std::optional<VerbNoun> analyze(std::string_view record_id, std::string_view instruction_en) const override;
};

/// Pairs produced elsewhere (e.g. by a dependency parser), one JSON object
/// per line: {"record_id": ..., "verb": ..., "noun": ...}. A null or absent
/// verb/noun means no pair. Records missing from the file yield no pair.
class AnnotationAnalyzer final : public VerbNounAnalyzer {
public:
    /// Throws ConfigError if the file is missing or malformed.
    explicit AnnotationAnalyzer(const std::filesystem::path& path);
    std::optional<VerbNoun> analyze(std::string_view record_id, std::string_view instruction_en) const override;

private:
    std::unordered_map<std::string, std::optional<VerbNoun>> by_record_;
};

/// Convenience over RuleBasedAnalyzer.
std::optional<VerbNoun> extract_verb_noun(std::string_view instruction_en);

/// Singular form of an English noun (regular rules plus common irregulars).
std::string noun_lemma(std::string_view word);

struct DiversityReport {
    std::vector<VerbNounPair> pairs;  // count desc, then verb, then noun
    std::size_t instructions = 0;
    std::size_t with_pair = 0;

    double coverage() const { return instructions == 0 ? 0.0 : double(with_pair) / double(instructions); }
};

struct InstructionRef {
    std::string record_id;
    std::string instruction_en;
};

DiversityReport verb_noun_pairs(const std::vector<InstructionRef>& instructions, const VerbNounAnalyzer& analyzer);

/// Uses provenance.instruction_en of each row.
DiversityReport verb_noun_pairs(const std::vector<pipeline::DatasetRow>& rows, const VerbNounAnalyzer& analyzer);

/// verb,noun,count
std::string to_csv(const DiversityReport& r);

}  // namespace revgen::report
