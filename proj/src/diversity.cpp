#include "revgen/diversity.hpp"

#include "revgen/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <unordered_set>

namespace revgen::report {

namespace {

using WordSet = std::unordered_set<std::string_view>;

// Base forms that open imperative instructions.
const WordSet kVerbs = {
    "add", "adapt", "address", "adjust", "analyse", "analyze", "annotate", "answer", "apply", "arrange", "ask",
    "assess", "assign", "build", "calculate", "categorize", "change", "check", "choose", "cite", "clarify",
    "classify", "collect", "combine", "come", "compare", "compile", "complete", "compose", "compute", "condense",
    "construct", "continue", "contrast", "convert", "correct", "count", "craft", "create", "critique", "debug",
    "decide", "define", "delete", "demonstrate", "derive", "describe", "design", "detect", "determine",
    "develop", "devise", "discuss", "distinguish", "divide", "document", "draft", "draw", "edit", "elaborate",
    "eliminate", "enumerate", "estimate", "evaluate", "examine", "expand", "explain", "explore", "express",
    "extract", "fill", "find", "fix", "format", "formulate", "generate", "give", "guess", "help", "highlight",
    "identify", "illustrate", "implement", "improve", "infer", "insert", "interpret", "introduce", "invent",
    "investigate", "label", "list", "locate", "make", "map", "mark", "match", "measure", "mention", "merge",
    "modify", "name", "note", "offer", "order", "organize", "outline", "paraphrase", "pick", "plan", "point",
    "predict", "prepare", "present", "produce", "propose", "provide", "rank", "rate", "read", "recall",
    "recommend", "reduce", "refactor", "reformulate", "remove", "reorder", "rephrase", "replace", "report",
    "represent", "restate", "restructure", "retrieve", "review", "revise", "rewrite", "say", "score", "select",
    "separate", "share", "shorten", "show", "simplify", "sketch", "solve", "sort", "specify", "split", "state",
    "structure", "suggest", "sum", "summarise", "summarize", "support", "tag", "take", "teach", "tell", "test",
    "transform", "translate", "turn", "use", "verify", "visualize", "write",
};

// Particles of phrasal verbs ("come up with", "point out", "sum up").
const WordSet kParticles = {"up", "out", "down", "over", "back"};

// Indirect objects that sit between the verb and its direct object.
const WordSet kObjectPronouns = {"me", "us", "him", "her", "them", "you"};

// Tokens that may open a noun phrase but are never its head.
const WordSet kNpOpeners = {
    "a", "an", "the", "this", "these", "those", "my", "your", "our", "their", "his", "its", "some", "any",
    "each", "every", "all", "both", "few", "several", "many", "much", "more", "most", "another", "such",
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "twenty", "hundred",
    "first", "second", "third", "last", "next", "briefly", "carefully", "concisely", "only", "just", "also",
    "again", "exactly", "at", "least",
};

// A noun phrase cannot start with these: the object is a clause or absent.
const WordSet kClauseOpeners = {
    "how", "why", "what", "whether", "if", "when", "where", "which", "who", "whom", "that", "it",
    "yourself", "to", "for", "of", "in", "on", "about", "with", "from", "by", "into", "as", "between",
    "is", "are", "was", "were", "be", "do", "does", "not",
};

// Tokens that end the first noun phrase.
const WordSet kBoundaries = {
    "of", "for", "to", "in", "on", "about", "with", "from", "by", "into", "as", "at", "between", "using",
    "without", "under", "over", "through", "like", "based", "per", "via", "within", "than", "among",
    "across", "after", "before", "during", "against", "toward", "towards", "regarding", "including",
    "and", "or", "but", "so", "because", "while", "whereas", "nor", "then",
    "that", "which", "who", "whose", "where", "when", "if", "whether",
    "is", "are", "was", "were", "be", "can", "could", "should", "would", "will", "must", "may", "might",
};

const std::map<std::string_view, std::string_view> kIrregularPlurals = {
    {"children", "child"}, {"people", "person"}, {"men", "man"},     {"women", "woman"}, {"mice", "mouse"},
    {"feet", "foot"},      {"teeth", "tooth"},   {"geese", "goose"}, {"criteria", "criterion"},
    {"phenomena", "phenomenon"}, {"analyses", "analysis"}, {"theses", "thesis"}, {"hypotheses", "hypothesis"},
    {"leaves", "leaf"},    {"lives", "life"},    {"knives", "knife"}, {"wives", "wife"}, {"halves", "half"},
    {"shelves", "shelf"},  {"wolves", "wolf"},   {"indices", "index"}, {"matrices", "matrix"},
    {"quizzes", "quiz"},
};

const WordSet kInvariantNouns = {
    "news", "series", "species", "physics", "mathematics", "economics", "politics", "ethics", "statistics",
    "data", "lyrics", "analysis", "basis", "thesis", "hypothesis", "crisis", "status", "bus", "virus",
    "campus", "bonus", "corpus", "process", "business", "address", "success", "class", "glass", "grass",
    "boss", "loss", "chess", "dress", "gas", "atlas", "canvas", "christmas", "alias", "always", "this",
    "is", "its", "his", "lens", "tennis", "diabetes",
};

struct Token {
    std::string word;     // lowercased, surrounding punctuation stripped
    bool alpha = false;   // letters, hyphens and apostrophes only
    bool ends_clause = false;  // followed by , ; : . ? ! or a closing quote/bracket
};

bool is_word_char(unsigned char c) { return std::isalpha(c) || c == '-' || c == '\''; }

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) break;
        std::string_view raw = text.substr(start, i - start);

        std::size_t b = 0, e = raw.size();
        while (b < e && !std::isalnum(static_cast<unsigned char>(raw[b])) && static_cast<unsigned char>(raw[b]) < 0x80) ++b;
        while (e > b && !std::isalnum(static_cast<unsigned char>(raw[e - 1])) && static_cast<unsigned char>(raw[e - 1]) < 0x80) --e;
        Token t;
        t.ends_clause = e < raw.size();
        if (b == e) {
            // Pure punctuation such as "-" or "=".
            t.word = std::string(raw);
            t.ends_clause = true;
            out.push_back(std::move(t));
            continue;
        }
        std::string w(raw.substr(b, e - b));
        if (w.size() > 2 && w.ends_with("'s")) w.resize(w.size() - 2);
        for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        t.alpha = std::all_of(w.begin(), w.end(), [](char c) { return is_word_char(static_cast<unsigned char>(c)); }) &&
                  std::isalpha(static_cast<unsigned char>(w.front()));
        t.word = std::move(w);
        out.push_back(std::move(t));
    }
    return out;
}

bool contains(const WordSet& s, const std::string& w) { return s.contains(std::string_view(w)); }

bool is_participle(const std::string& w) { return w.size() > 5 && w.ends_with("ing"); }

}  // namespace

std::string noun_lemma(std::string_view word) {
    std::string w(word);
    for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (auto it = kIrregularPlurals.find(w); it != kIrregularPlurals.end()) return std::string(it->second);
    if (contains(kInvariantNouns, w) || w.size() <= 3) return w;
    if (w.ends_with("ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
    for (std::string_view suf : {"ches", "shes", "sses", "xes", "zzes"}) {
        if (w.ends_with(suf)) return w.substr(0, w.size() - 2);
    }
    if (w.ends_with("oes") && w.size() > 4) return w.substr(0, w.size() - 2);
    if (w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is") && !w.ends_with("ous")) {
        return w.substr(0, w.size() - 1);
    }
    return w;
}

std::optional<VerbNoun> RuleBasedAnalyzer::analyze(std::string_view, std::string_view instruction_en) const {
    const auto toks = tokenize(instruction_en);
    std::size_t i = 0;
    while (i < toks.size() && (toks[i].word == "please" || toks[i].word == "kindly")) ++i;
    if (i >= toks.size() || !toks[i].alpha || !contains(kVerbs, toks[i].word)) return std::nullopt;
    const std::string verb = toks[i].word;
    if (toks[i].ends_clause) return std::nullopt;
    ++i;

    if (i < toks.size() && contains(kParticles, toks[i].word) && !toks[i].ends_clause) {
        ++i;
        if (i < toks.size() && toks[i].word == "with") ++i;
    }
    while (i < toks.size() && contains(kObjectPronouns, toks[i].word) && !toks[i].ends_clause) ++i;

    // "at least" and similar openers are skipped; a clause opener means no nominal object.
    while (i < toks.size() && contains(kNpOpeners, toks[i].word) && !toks[i].ends_clause) ++i;
    if (i >= toks.size() || !toks[i].alpha || contains(kClauseOpeners, toks[i].word)) return std::nullopt;

    std::optional<std::size_t> head;
    for (; i < toks.size(); ++i) {
        const Token& t = toks[i];
        if (!t.alpha || contains(kBoundaries, t.word)) break;
        if (head && is_participle(t.word) && i + 1 < toks.size() &&
            (contains(kNpOpeners, toks[i + 1].word) || contains(kObjectPronouns, toks[i + 1].word))) {
            break;
        }
        head = i;
        if (t.ends_clause) break;
    }
    if (!head) return std::nullopt;
    return VerbNoun{verb, noun_lemma(toks[*head].word)};
}

std::optional<VerbNoun> extract_verb_noun(std::string_view instruction_en) {
    static const RuleBasedAnalyzer analyzer;
    return analyzer.analyze({}, instruction_en);
}

AnnotationAnalyzer::AnnotationAnalyzer(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("annotation file not found: " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            const auto id = j.at("record_id").get<std::string>();
            std::optional<VerbNoun> vn;
            const bool has_verb = j.contains("verb") && j["verb"].is_string();
            const bool has_noun = j.contains("noun") && j["noun"].is_string();
            if (has_verb && has_noun) vn = VerbNoun{j["verb"].get<std::string>(), j["noun"].get<std::string>()};
            by_record_[id] = std::move(vn);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::optional<VerbNoun> AnnotationAnalyzer::analyze(std::string_view record_id, std::string_view) const {
    auto it = by_record_.find(std::string(record_id));
    return it == by_record_.end() ? std::nullopt : it->second;
}

DiversityReport verb_noun_pairs(const std::vector<InstructionRef>& instructions, const VerbNounAnalyzer& analyzer) {
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    DiversityReport r;
    for (const auto& ins : instructions) {
        ++r.instructions;
        if (auto vn = analyzer.analyze(ins.record_id, ins.instruction_en)) {
            ++r.with_pair;
            ++counts[{vn->verb, vn->noun}];
        }
    }
    for (const auto& [k, c] : counts) r.pairs.push_back({k.first, k.second, c});
    std::stable_sort(r.pairs.begin(), r.pairs.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
    return r;
}

DiversityReport verb_noun_pairs(const std::vector<pipeline::DatasetRow>& rows, const VerbNounAnalyzer& analyzer) {
    std::vector<InstructionRef> refs;
    refs.reserve(rows.size());
    for (const auto& row : rows) refs.push_back({row.provenance.record_id, row.provenance.instruction_en});
    return verb_noun_pairs(refs, analyzer);
}

std::string to_csv(const DiversityReport& r) {
    std::string out = "verb,noun,count\n";
    for (const auto& p : r.pairs) out += p.verb + ',' + p.noun + ',' + std::to_string(p.count) + '\n';
    return out;
}

}  // namespace revgen::report
