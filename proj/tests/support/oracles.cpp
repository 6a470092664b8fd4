#include "support/oracles.hpp"

#include <sodium.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace oracle {

std::string sha256_hex(std::string_view data) {
    unsigned char out[crypto_hash_sha256_BYTES];
    crypto_hash_sha256(out, reinterpret_cast<const unsigned char*>(data.data()), data.size());
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned char c : out) {
        s.push_back(hex[c >> 4]);
        s.push_back(hex[c & 15]);
    }
    return s;
}

std::string ascii_fragment_id(std::string_view language, std::string_view text) {
    std::string collapsed;
    bool pending_space = false;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            pending_space = !collapsed.empty();
            continue;
        }
        if (pending_space) collapsed.push_back(' ');
        pending_space = false;
        collapsed.push_back(c);
    }
    std::string key(language);
    key.push_back('\x1f');
    key += collapsed;
    return sha256_hex(key).substr(0, 32);
}

const std::vector<LabeledChar>& alphabet() {
    static const std::vector<LabeledChar> a = {
        {"A", Cls::upper}, {"B", Cls::upper}, {"K", Cls::upper}, {"Z", Cls::upper}, {"\xC3\x89", Cls::upper} /* É */,
        {"\xC3\x91", Cls::upper} /* Ñ */, {"\xCE\x94", Cls::upper} /* Δ */, {"\xD0\x96", Cls::upper} /* Ж */,
        {"a", Cls::lower}, {"e", Cls::lower}, {"m", Cls::lower}, {"z", Cls::lower}, {"\xC3\xA9", Cls::lower} /* é */,
        {"\xC3\xB1", Cls::lower} /* ñ */, {"\xC3\x9F", Cls::lower} /* ß */, {"\xCE\xB4", Cls::lower} /* δ */,
        {"\xD0\xB6", Cls::lower} /* ж */,
        {"\xE0\xB0\x85", Cls::caseless} /* Telugu A */, {"\xE0\xB0\x95", Cls::caseless} /* Telugu KA */,
        {"\xE0\xB0\xBE", Cls::caseless} /* Telugu vowel sign AA */, {"\xE0\xB1\x8D", Cls::caseless} /* Telugu virama */,
        {"\xE3\x81\x82", Cls::caseless} /* hiragana a */, {"\xE3\x82\xAB", Cls::caseless} /* katakana ka */,
        {"\xE6\x97\xA5", Cls::caseless} /* Han sun */, {"\xD8\xA8", Cls::caseless} /* Arabic beh */,
        {"\xE0\xA4\x95", Cls::caseless} /* Devanagari KA */,
        {"0", Cls::digit}, {"7", Cls::digit}, {"\xE0\xB1\xA7", Cls::digit} /* Telugu one */,
        {"\xD9\xA3", Cls::digit} /* Arabic-Indic three */, {"\xE0\xA5\xAA", Cls::digit} /* Devanagari four */,
        {" ", Cls::space}, {"\t", Cls::space},
        {"!", Cls::other}, {"?", Cls::other}, {".", Cls::other}, {",", Cls::other}, {"#", Cls::other},
        {"$", Cls::other}, {"%", Cls::other}, {"@", Cls::other}, {"(", Cls::other}, {"\xC2\xBF", Cls::other} /* ¿ */,
        {"\xC2\xAB", Cls::other} /* « */, {"\xE2\x82\xAC", Cls::other} /* € */, {"\xE3\x80\x82", Cls::other} /* 。 */,
        {"\xE0\xA5\xA4", Cls::other} /* danda */, {"+", Cls::other}, {"=", Cls::other},
    };
    return a;
}

LabeledString random_labeled(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
    const auto& a = alphabet();
    std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
    // Skew toward one class per string so every rejection reason shows up.
    std::uniform_int_distribution<int> bias_dist(0, 6);
    const int bias = bias_dist(rng);
    std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    LabeledString s;
    const std::size_t n = len_dist(rng);
    while (s.total < n) {
        const LabeledChar* c = &a[pick(rng)];
        if (bias < 6 && coin(rng) < 0.5) {
            while (static_cast<int>(c->cls) != bias) c = &a[pick(rng)];
        }
        s.text += c->utf8;
        ++s.counts[static_cast<int>(c->cls)];
        ++s.total;
    }
    return s;
}

FilterExpectation expected_filter(const LabeledString& s, std::size_t min_chars, std::size_t max_chars,
                                  double max_upper, double max_symbol) {
    FilterExpectation e;
    const auto up = s.counts[static_cast<int>(Cls::upper)];
    const auto low = s.counts[static_cast<int>(Cls::lower)];
    const auto other = s.counts[static_cast<int>(Cls::other)];
    e.uppercase_ratio = up + low == 0 ? 0.0 : double(up) / double(up + low);
    e.symbol_ratio = s.total == 0 ? 0.0 : double(other) / double(s.total);
    if (s.total < min_chars) {
        e.reason = "too_short";
    } else if (s.total > max_chars) {
        e.reason = "too_long";
    } else if (up + low > 0 && e.uppercase_ratio > max_upper) {
        e.reason = "uppercase_ratio";
    } else if (e.symbol_ratio > max_symbol) {
        e.reason = "symbol_ratio";
    }
    e.accepted = e.reason.empty();
    return e;
}

std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    for (std::size_t i = 0; i < s.size();) {
        const auto b = static_cast<unsigned char>(s[i]);
        int len = b < 0x80 ? 1 : (b >> 5) == 6 ? 2 : (b >> 4) == 14 ? 3 : 4;
        char32_t cp = len == 1 ? b : len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
        for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        out.push_back(cp);
        i += static_cast<std::size_t>(len);
    }
    return out;
}

namespace {

std::set<std::u32string> shingle_set(std::string_view text, std::size_t k) {
    const auto cps = decode_utf8(text);
    std::set<std::u32string> out;
    if (cps.size() < k) {
        out.insert(std::u32string(cps.begin(), cps.end()));
        return out;
    }
    for (std::size_t i = 0; i + k <= cps.size(); ++i) out.insert(std::u32string(cps.begin() + i, cps.begin() + i + k));
    return out;
}

}  // namespace

double jaccard(std::string_view a, std::string_view b, std::size_t k) {
    const auto sa = shingle_set(a, k), sb = shingle_set(b, k);
    std::size_t inter = 0;
    for (const auto& x : sa) inter += sb.count(x);
    const std::size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 1.0 : double(inter) / double(uni);
}

std::vector<std::size_t> near_dedup_survivors(const std::vector<std::string>& texts, std::size_t k, double threshold) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        bool dup = false;
        for (std::size_t j : kept) {
            if (jaccard(texts[i], texts[j], k) >= threshold) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(i);
    }
    return kept;
}

TwoPass two_pass(const std::vector<double>& xs) {
    TwoPass r;
    if (xs.empty()) return r;
    double sum = 0.0;
    for (double x : xs) sum += x;
    r.mean = sum / double(xs.size());
    double sq = 0.0;
    for (double x : xs) sq += (x - r.mean) * (x - r.mean);
    r.stddev = std::sqrt(sq / double(xs.size()));
    return r;
}

bool rel_close(double a, double b, double rel) {
    if (a == b) return true;
    return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

std::vector<std::string> prose_lines(std::size_t n, std::uint64_t seed) {
    static const char* words[] = {
        "el", "la", "los", "una", "casa", "perro", "gato", "mercado", "ciudad", "montaña", "río", "verano",
        "invierno", "escuela", "libro", "mesa", "camino", "puerta", "ventana", "jardín", "árbol", "flor", "lluvia",
        "sol", "luna", "estrella", "música", "canción", "pintura", "historia", "ciencia", "agua", "fuego", "tierra",
        "viento", "pan", "queso", "vino", "leche", "café", "azúcar", "sal", "aceite", "tomate", "cebolla", "ajo",
        "camisa", "zapato", "sombrero", "tren", "barco", "avión", "coche", "bicicleta", "puente", "plaza", "iglesia",
        "museo", "teatro", "médico", "maestro", "alumno", "vecino", "amigo", "familia", "abuelo", "niña", "trabajo",
        "dinero", "tiempo", "mañana", "noche", "semana", "año", "siglo", "idioma", "palabra", "pregunta", "respuesta",
        "camina", "come", "bebe", "escribe", "lee", "canta", "baila", "corre", "duerme", "piensa", "habla", "mira",
        "compra", "vende", "abre", "cierra", "sube", "baja", "llega", "sale", "grande", "pequeño", "rojo", "verde",
        "azul", "blanco", "negro", "viejo", "nuevo", "rápido", "lento", "feliz", "triste", "caliente", "frío",
    };
    constexpr std::size_t nwords = sizeof(words) / sizeof(words[0]);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, nwords - 1);
    std::uniform_int_distribution<int> len(12, 28);
    std::vector<std::string> out;
    std::set<std::string> seen;
    while (out.size() < n) {
        std::string line;
        const int w = len(rng);
        for (int i = 0; i < w; ++i) {
            if (i) line.push_back(' ');
            line += words[pick(rng)];
        }
        line[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(line[0])));
        line += " " + std::to_string(out.size()) + ".";
        if (seen.insert(line).second) out.push_back(std::move(line));
    }
    return out;
}

TempDir::TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "revgen-test-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, std::string_view content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace oracle
