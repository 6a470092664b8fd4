#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace revgen::text {

/// Character classes used by the corpus heuristics. Combining marks count as
/// letters of their script (Telugu/Devanagari vowel signs would otherwise be
/// classified as symbols).
enum class CharClass {
    upper_letter,     // bicameral, upper or title case
    lower_letter,     // bicameral, lower case
    caseless_letter,  // letters and marks of caseless scripts
    digit,
    space,
    other,
};

bool is_valid_utf8(std::string_view s);

/// Number of Unicode scalar values. Precondition: valid UTF-8.
std::size_t char_count(std::string_view s);

std::u32string to_u32(std::string_view s);
std::string to_utf8(std::u32string_view s);

CharClass classify(char32_t cp);

std::string nfc(std::string_view s);

/// Collapses every run of Unicode whitespace to a single ASCII space and trims.
std::string collapse_whitespace(std::string_view s);

/// NFC + whitespace collapse + trim. Basis for fragment ids and dedup.
std::string normalize(std::string_view s);

/// Full Unicode case folding.
std::string fold_case(std::string_view s);

/// Removes trailing Unicode punctuation (and any whitespace interleaved with it).
std::string strip_trailing_punct(std::string_view s);

/// Trims ASCII and Unicode whitespace at both ends.
std::string trim(std::string_view s);

}  // namespace revgen::text
