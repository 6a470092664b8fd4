#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace revgen::corpus {

enum class FragmentSource { monolingual_corpus, existing_nlp_answer };

enum class FragmentStatus { raw, deduped, accepted, rejected };

enum class FilterRejection { too_short, too_long, uppercase_ratio, symbol_ratio };

std::string_view to_string(FragmentSource s);
std::string_view to_string(FragmentStatus s);
std::string_view to_string(FilterRejection r);
FragmentSource parse_source(std::string_view s);

/// A candidate response in the source language.
struct TextFragment {
    std::string id;
    std::string language;
    std::string text;
    FragmentSource source = FragmentSource::monolingual_corpus;
    std::size_t char_len = 0;
    FragmentStatus status = FragmentStatus::raw;
    std::optional<FilterRejection> reject_reason;

    /// Moves the status forward along raw -> deduped -> accepted|rejected.
    /// Re-applying the current non-terminal status is a no-op; anything else throws.
    void advance(FragmentStatus next, std::optional<FilterRejection> reason = std::nullopt);

    friend bool operator==(const TextFragment&, const TextFragment&) = default;
};

struct FilterConfig {
    std::size_t min_chars = 20;
    std::size_t max_chars = 4000;
    double max_uppercase_ratio = 0.3;
    double max_symbol_ratio = 0.2;
    std::size_t near_dup_shingle_size = 5;
    double near_dup_jaccard_threshold = 0.85;

    /// Throws ConfigError when an invariant does not hold.
    void validate() const;
};

/// Content-derived id: hex digest over (language, normalized text).
std::string fragment_id(std::string_view language, std::string_view text);

TextFragment make_fragment(std::string_view language, std::string text,
                           FragmentSource source = FragmentSource::monolingual_corpus);

struct LineError {
    std::size_t line_no;  // 1-based
    std::string message;
};

struct IngestResult {
    std::vector<TextFragment> fragments;
    std::vector<LineError> errors;
    std::size_t lines_read = 0;
    std::size_t empty_lines = 0;
};

/// One fragment per non-blank line. Invalid UTF-8 lines are skipped and
/// recorded in `errors`. Throws ConfigError for an unknown language code.
IngestResult ingest_fragments(std::istream& in, std::string_view language,
                              FragmentSource source = FragmentSource::monolingual_corpus);

/// Keeps the first occurrence of each id, marked deduped.
std::vector<TextFragment> exact_dedup(std::span<const TextFragment> fragments);

/// Character shingles (code-point k-grams) of the normalized text. Texts
/// shorter than k yield a single shingle holding the whole text.
std::vector<std::u32string> shingles(std::string_view text, std::size_t k);

/// Drops every fragment whose shingle-set Jaccard similarity with an earlier
/// survivor reaches the configured threshold. Exact: candidates come from a
/// prefix-filtered inverted index and are verified on the full sets.
std::vector<TextFragment> near_dedup(std::span<const TextFragment> fragments, const FilterConfig& cfg);

struct FilterDecision {
    bool accepted = true;
    std::optional<FilterRejection> reason;
    double uppercase_ratio = 0.0;  // over cased characters only; 0 when none
    double symbol_ratio = 0.0;     // over all characters
};

/// Pure function of (text, cfg). Checks run in order: length, uppercase, symbols.
FilterDecision heuristic_filter(std::string_view text, const FilterConfig& cfg);

/// Applies heuristic_filter and advances the fragment to accepted or rejected.
TextFragment apply_filter(TextFragment fragment, const FilterConfig& cfg);

/// Seeded uniform sample of `n` fragments, returned in input order.
std::vector<TextFragment> sample_fragments(std::span<const TextFragment> fragments, std::size_t n,
                                           std::uint64_t seed);

std::string to_json_line(const TextFragment& f);
TextFragment fragment_from_json_line(std::string_view line);

}  // namespace revgen::corpus
