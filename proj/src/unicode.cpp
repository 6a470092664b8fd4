#include "revgen/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace revgen::text {

namespace {

icu::UnicodeString to_icu(std::string_view s) {
    return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

std::string from_icu(const icu::UnicodeString& u) {
    std::string out;
    u.toUTF8String(out);
    return out;
}

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

}  // namespace

bool is_valid_utf8(std::string_view s) {
    int32_t i = 0;
    const auto len = static_cast<int32_t>(s.size());
    const auto* p = reinterpret_cast<const uint8_t*>(s.data());
    while (i < len) {
        UChar32 c;
        U8_NEXT(p, i, len, c);
        if (c < 0) return false;
    }
    return true;
}

std::size_t char_count(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

std::u32string to_u32(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    int32_t i = 0;
    const auto len = static_cast<int32_t>(s.size());
    const auto* p = reinterpret_cast<const uint8_t*>(s.data());
    while (i < len) {
        UChar32 c;
        U8_NEXT(p, i, len, c);
        if (c < 0) throw std::invalid_argument("invalid UTF-8 sequence");
        out.push_back(static_cast<char32_t>(c));
    }
    return out;
}

std::string to_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) {
        uint8_t buf[4];
        int32_t n = 0;
        UBool err = false;
        U8_APPEND(buf, n, 4, static_cast<UChar32>(cp), err);
        if (err) throw std::invalid_argument("code point not encodable as UTF-8");
        out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
    }
    return out;
}

CharClass classify(char32_t cp) {
    const auto c = static_cast<UChar32>(cp);
    if (u_isUWhiteSpace(c)) return CharClass::space;
    const int8_t type = u_charType(c);
    switch (type) {
        case U_UPPERCASE_LETTER:
        case U_TITLECASE_LETTER:
            return CharClass::upper_letter;
        case U_LOWERCASE_LETTER:
            return CharClass::lower_letter;
        case U_MODIFIER_LETTER:
        case U_OTHER_LETTER:
        case U_NON_SPACING_MARK:
        case U_COMBINING_SPACING_MARK:
        case U_ENCLOSING_MARK:
            return CharClass::caseless_letter;
        case U_DECIMAL_DIGIT_NUMBER:
            return CharClass::digit;
        default:
            return CharClass::other;
    }
}

std::string nfc(std::string_view s) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
    icu::UnicodeString out = norm->normalize(to_icu(s), status);
    if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
    return from_icu(out);
}

std::string collapse_whitespace(std::string_view s) {
    std::u32string in = to_u32(s);
    std::u32string out;
    out.reserve(in.size());
    bool pending_space = false;
    for (char32_t cp : in) {
        if (is_space(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(U' ');
        pending_space = false;
        out.push_back(cp);
    }
    return to_utf8(out);
}

std::string normalize(std::string_view s) { return collapse_whitespace(nfc(s)); }

std::string fold_case(std::string_view s) {
    icu::UnicodeString u = to_icu(s);
    u.foldCase(U_FOLD_CASE_DEFAULT);
    return from_icu(u);
}

std::string strip_trailing_punct(std::string_view s) {
    std::u32string u = to_u32(s);
    while (!u.empty()) {
        const auto c = static_cast<UChar32>(u.back());
        if (u_ispunct(c) || u_isUWhiteSpace(c)) {
            u.pop_back();
        } else {
            break;
        }
    }
    return to_utf8(u);
}

std::string trim(std::string_view s) {
    std::u32string u = to_u32(s);
    std::size_t b = 0;
    std::size_t e = u.size();
    while (b < e && is_space(u[b])) ++b;
    while (e > b && is_space(u[e - 1])) --e;
    return to_utf8(std::u32string_view(u).substr(b, e - b));
}

}  // namespace revgen::text
