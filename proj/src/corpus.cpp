#include "revgen/corpus.hpp"

#include "revgen/errors.hpp"
#include "revgen/hash.hpp"
#include "revgen/languages.hpp"
#include "revgen/unicode.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace revgen::corpus {

using nlohmann::json;

std::string_view to_string(FragmentSource s) {
    switch (s) {
        case FragmentSource::monolingual_corpus: return "monolingual_corpus";
        case FragmentSource::existing_nlp_answer: return "existing_nlp_answer";
    }
    return "unknown";
}

std::string_view to_string(FragmentStatus s) {
    switch (s) {
        case FragmentStatus::raw: return "raw";
        case FragmentStatus::deduped: return "deduped";
        case FragmentStatus::accepted: return "accepted";
        case FragmentStatus::rejected: return "rejected";
    }
    return "unknown";
}

std::string_view to_string(FilterRejection r) {
    switch (r) {
        case FilterRejection::too_short: return "too_short";
        case FilterRejection::too_long: return "too_long";
        case FilterRejection::uppercase_ratio: return "uppercase_ratio";
        case FilterRejection::symbol_ratio: return "symbol_ratio";
    }
    return "unknown";
}

FragmentSource parse_source(std::string_view s) {
    if (s == "monolingual_corpus") return FragmentSource::monolingual_corpus;
    if (s == "existing_nlp_answer") return FragmentSource::existing_nlp_answer;
    throw ConfigError("unknown fragment source: " + std::string(s));
}

namespace {

FragmentStatus parse_status(std::string_view s) {
    for (auto st : {FragmentStatus::raw, FragmentStatus::deduped, FragmentStatus::accepted,
                    FragmentStatus::rejected}) {
        if (to_string(st) == s) return st;
    }
    throw std::invalid_argument("unknown fragment status: " + std::string(s));
}

FilterRejection parse_rejection(std::string_view s) {
    for (auto r : {FilterRejection::too_short, FilterRejection::too_long, FilterRejection::uppercase_ratio,
                   FilterRejection::symbol_ratio}) {
        if (to_string(r) == s) return r;
    }
    throw std::invalid_argument("unknown reject reason: " + std::string(s));
}

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

void TextFragment::advance(FragmentStatus next, std::optional<FilterRejection> reason) {
    const bool terminal = status == FragmentStatus::accepted || status == FragmentStatus::rejected;
    bool ok = false;
    switch (next) {
        case FragmentStatus::raw: ok = status == FragmentStatus::raw; break;
        case FragmentStatus::deduped: ok = !terminal; break;
        case FragmentStatus::accepted:
        case FragmentStatus::rejected: ok = status == FragmentStatus::deduped; break;
    }
    if (!ok) {
        throw std::logic_error("illegal fragment status transition " + std::string(to_string(status)) +
                               " -> " + std::string(to_string(next)));
    }
    if (next == FragmentStatus::rejected && !reason) throw std::logic_error("rejection requires a reason");
    status = next;
    reject_reason = next == FragmentStatus::rejected ? reason : std::nullopt;
}

void FilterConfig::validate() const {
    if (min_chars > max_chars) throw ConfigError("filter: min_chars must not exceed max_chars");
    auto fraction = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!fraction(max_uppercase_ratio)) throw ConfigError("filter: max_uppercase_ratio must lie in [0,1]");
    if (!fraction(max_symbol_ratio)) throw ConfigError("filter: max_symbol_ratio must lie in [0,1]");
    if (!fraction(near_dup_jaccard_threshold))
        throw ConfigError("filter: near_dup_jaccard_threshold must lie in [0,1]");
    if (near_dup_shingle_size < 1) throw ConfigError("filter: near_dup_shingle_size must be >= 1");
}

std::string fragment_id(std::string_view language, std::string_view text) {
    std::string key(language);
    key.push_back('\x1f');
    key += text::normalize(text);
    return sha256_hex(key).substr(0, 32);
}

TextFragment make_fragment(std::string_view language, std::string text, FragmentSource source) {
    TextFragment f;
    f.id = fragment_id(language, text);
    f.language = std::string(language);
    f.char_len = text::char_count(text);
    f.text = std::move(text);
    f.source = source;
    return f;
}

IngestResult ingest_fragments(std::istream& in, std::string_view language, FragmentSource source) {
    if (!is_known_language(language)) {
        throw ConfigError("unknown or unsupported language code: '" + std::string(language) + "'");
    }
    IngestResult result;
    std::string line;
    while (std::getline(in, line)) {
        ++result.lines_read;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!text::is_valid_utf8(line)) {
            result.errors.push_back({result.lines_read, "invalid UTF-8"});
            continue;
        }
        if (is_blank(line) || text::normalize(line).empty()) {
            ++result.empty_lines;
            continue;
        }
        result.fragments.push_back(make_fragment(language, std::move(line), source));
    }
    return result;
}

std::vector<TextFragment> exact_dedup(std::span<const TextFragment> fragments) {
    std::unordered_set<std::string_view> seen;
    std::vector<TextFragment> out;
    out.reserve(fragments.size());
    for (const auto& f : fragments) {
        if (!seen.insert(f.id).second) continue;
        out.push_back(f);
        out.back().advance(FragmentStatus::deduped);
    }
    return out;
}

std::vector<std::u32string> shingles(std::string_view txt, std::size_t k) {
    if (k == 0) throw PreconditionError("shingle size must be >= 1");
    const std::u32string u = text::to_u32(text::normalize(txt));
    std::vector<std::u32string> out;
    if (u.empty()) return out;
    if (u.size() < k) {
        out.push_back(u);
        return out;
    }
    out.reserve(u.size() - k + 1);
    for (std::size_t i = 0; i + k <= u.size(); ++i) out.push_back(u.substr(i, k));
    return out;
}

namespace {

struct U32Hash {
    std::size_t operator()(const std::u32string& s) const {
        return std::hash<std::u32string_view>{}(s);
    }
};

std::size_t intersection_size(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

std::size_t prefix_length(std::size_t n, double t) {
    const auto required = static_cast<std::size_t>(std::ceil(t * static_cast<double>(n) - 1e-9));
    const std::size_t p = n + 1 - std::min(required, n);
    return std::clamp<std::size_t>(p, 1, n);
}

}  // namespace

std::vector<TextFragment> near_dedup(std::span<const TextFragment> fragments, const FilterConfig& cfg) {
    cfg.validate();
    const double t = cfg.near_dup_jaccard_threshold;
    std::vector<TextFragment> out;
    if (fragments.empty()) return out;
    if (t <= 0.0) {
        out.push_back(fragments.front());
        return out;
    }

    // Token ids for distinct shingles, then a global order by ascending
    // document frequency so that prefixes hold the rarest tokens.
    std::unordered_map<std::u32string, std::uint32_t, U32Hash> dict;
    std::vector<std::vector<std::uint32_t>> sets(fragments.size());
    std::vector<std::uint32_t> df;
    for (std::size_t i = 0; i < fragments.size(); ++i) {
        for (auto& sh : shingles(fragments[i].text, cfg.near_dup_shingle_size)) {
            auto [it, inserted] = dict.try_emplace(std::move(sh), static_cast<std::uint32_t>(dict.size()));
            if (inserted) df.push_back(0);
            sets[i].push_back(it->second);
        }
        auto& s = sets[i];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (auto tok : s) ++df[tok];
    }
    std::vector<std::uint32_t> order(df.size());
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return df[a] != df[b] ? df[a] < df[b] : a < b;
    });
    std::vector<std::uint32_t> rank(df.size());
    for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    for (auto& s : sets) {
        for (auto& tok : s) tok = rank[tok];
        std::sort(s.begin(), s.end());
    }

    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> index;
    std::vector<std::uint32_t> survivors;
    std::vector<std::uint32_t> stamp(fragments.size(), UINT32_MAX);
    for (std::uint32_t i = 0; i < fragments.size(); ++i) {
        const auto& x = sets[i];
        bool duplicate = false;
        if (x.empty()) {
            // Empty shingle sets only arise from blank text; treat two of them as identical.
            for (auto s : survivors) {
                if (sets[s].empty()) { duplicate = true; break; }
            }
        } else {
            const std::size_t px = prefix_length(x.size(), t);
            for (std::size_t p = 0; p < px && !duplicate; ++p) {
                auto it = index.find(x[p]);
                if (it == index.end()) continue;
                for (auto cand : it->second) {
                    if (stamp[cand] == i) continue;
                    stamp[cand] = i;
                    const auto& y = sets[cand];
                    const std::size_t inter = intersection_size(x, y);
                    const std::size_t uni = x.size() + y.size() - inter;
                    if (static_cast<double>(inter) / static_cast<double>(uni) >= t) {
                        duplicate = true;
                        break;
                    }
                }
            }
        }
        if (duplicate) continue;
        survivors.push_back(i);
        if (!x.empty()) {
            const std::size_t px = prefix_length(x.size(), t);
            for (std::size_t p = 0; p < px; ++p) index[x[p]].push_back(i);
        }
    }
    out.reserve(survivors.size());
    for (auto s : survivors) out.push_back(fragments[s]);
    return out;
}

FilterDecision heuristic_filter(std::string_view txt, const FilterConfig& cfg) {
    FilterDecision d;
    const std::u32string u = text::to_u32(txt);
    std::size_t upper = 0;
    std::size_t lower = 0;
    std::size_t other = 0;
    for (char32_t cp : u) {
        switch (text::classify(cp)) {
            case text::CharClass::upper_letter: ++upper; break;
            case text::CharClass::lower_letter: ++lower; break;
            case text::CharClass::other: ++other; break;
            default: break;
        }
    }
    const std::size_t cased = upper + lower;
    d.uppercase_ratio = cased == 0 ? 0.0 : static_cast<double>(upper) / static_cast<double>(cased);
    d.symbol_ratio = u.empty() ? 0.0 : static_cast<double>(other) / static_cast<double>(u.size());

    auto reject = [&](FilterRejection r) {
        d.accepted = false;
        d.reason = r;
        return d;
    };
    if (u.size() < cfg.min_chars) return reject(FilterRejection::too_short);
    if (u.size() > cfg.max_chars) return reject(FilterRejection::too_long);
    if (cased > 0 && d.uppercase_ratio > cfg.max_uppercase_ratio) return reject(FilterRejection::uppercase_ratio);
    if (d.symbol_ratio > cfg.max_symbol_ratio) return reject(FilterRejection::symbol_ratio);
    return d;
}

TextFragment apply_filter(TextFragment fragment, const FilterConfig& cfg) {
    const auto d = heuristic_filter(fragment.text, cfg);
    if (d.accepted) {
        fragment.advance(FragmentStatus::accepted);
    } else {
        fragment.advance(FragmentStatus::rejected, d.reason);
    }
    return fragment;
}

std::vector<TextFragment> sample_fragments(std::span<const TextFragment> fragments, std::size_t n,
                                           std::uint64_t seed) {
    if (n >= fragments.size()) return {fragments.begin(), fragments.end()};
    std::vector<std::pair<std::uint64_t, std::size_t>> keys;
    keys.reserve(fragments.size());
    const std::uint64_t base = mix64(seed);
    for (std::size_t i = 0; i < fragments.size(); ++i) {
        keys.emplace_back(mix64(base ^ mix64(i)), i);
    }
    std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(n), keys.end());
    std::vector<std::size_t> chosen;
    chosen.reserve(n);
    for (std::size_t i = 0; i < n; ++i) chosen.push_back(keys[i].second);
    std::sort(chosen.begin(), chosen.end());
    std::vector<TextFragment> out;
    out.reserve(n);
    for (auto i : chosen) out.push_back(fragments[i]);
    return out;
}

std::string to_json_line(const TextFragment& f) {
    json j = {
        {"id", f.id},
        {"language", f.language},
        {"text", f.text},
        {"source", to_string(f.source)},
        {"char_len", f.char_len},
        {"status", to_string(f.status)},
    };
    if (f.reject_reason) j["reject_reason"] = to_string(*f.reject_reason);
    return j.dump();
}

TextFragment fragment_from_json_line(std::string_view line) {
    const json j = json::parse(line);
    TextFragment f;
    f.id = j.at("id").get<std::string>();
    f.language = j.at("language").get<std::string>();
    f.text = j.at("text").get<std::string>();
    f.source = parse_source(j.at("source").get<std::string>());
    f.char_len = j.at("char_len").get<std::size_t>();
    f.status = parse_status(j.at("status").get<std::string>());
    if (j.contains("reject_reason")) f.reject_reason = parse_rejection(j.at("reject_reason").get<std::string>());
    return f;
}

}  // namespace revgen::corpus
