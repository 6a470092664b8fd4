#pragma once

#include <string_view>

namespace revgen {

/// True for ISO 639-3 codes of the languages the pipeline accepts as source
/// languages. English ("eng") is the pivot language and is not accepted.
bool is_known_language(std::string_view iso639_3);

/// The code used for English in translation requests.
inline constexpr std::string_view kEnglish = "en";

}  // namespace revgen
