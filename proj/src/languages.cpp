#include "revgen/languages.hpp"

#include <algorithm>
#include <array>

namespace revgen {

namespace {

// ISO 639-3 codes of languages covered by common MT models (NLLB-200 subset),
// sorted for binary search.
constexpr std::array<std::string_view, 120> kCodes = {
    "afr", "amh", "arb", "ary", "arz", "asm", "ast", "azj", "bak", "bel", "ben", "bos", "bul",
    "cat", "ceb", "ces", "ckb", "cym", "dan", "deu", "ell", "epo", "est", "eus", "fao", "fin",
    "fra", "fur", "gaz", "gla", "gle", "glg", "guj", "hat", "hau", "heb", "hin", "hne", "hrv",
    "hun", "hye", "ibo", "ilo", "ind", "isl", "ita", "jav", "jpn", "kan", "kat", "kaz", "khk",
    "khm", "kin", "kir", "kmr", "kor", "lao", "lit", "ltz", "lug", "lvs", "mai", "mal", "mar",
    "mkd", "mlt", "mni", "mri", "mya", "nld", "nno", "nob", "npi", "nya", "oci", "ory", "pan",
    "pbt", "pes", "plt", "pol", "por", "ron", "rus", "san", "sat", "sin", "slk", "slv", "smo",
    "sna", "snd", "som", "sot", "spa", "srp", "sun", "swe", "swh", "tam", "tat", "tel", "tgk",
    "tgl", "tha", "tir", "tsn", "tur", "uig", "ukr", "urd", "uzn", "vie", "xho", "yor", "yue",
    "zho", "zsm", "zul",
};

}  // namespace

bool is_known_language(std::string_view code) {
    return std::binary_search(kCodes.begin(), kCodes.end(), code);
}

}  // namespace revgen
