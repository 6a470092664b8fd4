#include "revgen/journal.hpp"

#include "json.hpp"

#include <array>
#include <map>

namespace revgen::pipeline {

using nlohmann::ordered_json;

namespace {

constexpr std::array kStates = {RecordState::ingested, RecordState::selected, RecordState::translated,
                                RecordState::generated, RecordState::scored, RecordState::backtranslated,
                                RecordState::accepted, RecordState::rejected};

constexpr std::array kReasons = {RejectReason::heuristic, RejectReason::duplicate, RejectReason::not_sampled,
                                 RejectReason::forward_qe, RejectReason::parse_failure, RejectReason::alignment,
                                 RejectReason::judge_score, RejectReason::judge_unparseable,
                                 RejectReason::backtranslation_qe, RejectReason::provider_error};

constexpr std::array kSidecars = {Sidecar::translated, Sidecar::generated, Sidecar::scored, Sidecar::backtranslated};

constexpr std::string_view kFormat = "revgen-journal/1";

}  // namespace

std::string_view to_string(RecordState s) {
    switch (s) {
        case RecordState::ingested: return "ingested";
        case RecordState::selected: return "selected";
        case RecordState::translated: return "translated";
        case RecordState::generated: return "generated";
        case RecordState::scored: return "scored";
        case RecordState::backtranslated: return "backtranslated";
        case RecordState::accepted: return "accepted";
        case RecordState::rejected: return "rejected";
    }
    return "unknown";
}

std::string_view to_string(RejectReason r) {
    switch (r) {
        case RejectReason::heuristic: return "heuristic";
        case RejectReason::duplicate: return "duplicate";
        case RejectReason::not_sampled: return "not_sampled";
        case RejectReason::forward_qe: return "forward_qe";
        case RejectReason::parse_failure: return "parse_failure";
        case RejectReason::alignment: return "alignment";
        case RejectReason::judge_score: return "judge_score";
        case RejectReason::judge_unparseable: return "judge_unparseable";
        case RejectReason::backtranslation_qe: return "backtranslation_qe";
        case RejectReason::provider_error: return "provider_error";
    }
    return "unknown";
}

std::string_view to_string(Sidecar s) {
    switch (s) {
        case Sidecar::translated: return "translated";
        case Sidecar::generated: return "generated";
        case Sidecar::scored: return "scored";
        case Sidecar::backtranslated: return "backtranslated";
    }
    return "unknown";
}

RecordState parse_state(std::string_view s) {
    for (auto st : kStates) {
        if (to_string(st) == s) return st;
    }
    throw JournalError("unknown record state '" + std::string(s) + "'");
}

RejectReason parse_reason(std::string_view s) {
    for (auto r : kReasons) {
        if (to_string(r) == s) return r;
    }
    throw JournalError("unknown reject reason '" + std::string(s) + "'");
}

Sidecar parse_sidecar(std::string_view s) {
    for (auto sc : kSidecars) {
        if (to_string(sc) == s) return sc;
    }
    throw JournalError("unknown sidecar '" + std::string(s) + "'");
}

std::filesystem::path sidecar_path(const std::filesystem::path& run_dir, Sidecar s) {
    return run_dir / (std::string(to_string(s)) + ".jsonl");
}

bool is_legal_transition(RecordState from, RecordState to) {
    if (is_terminal(from)) return false;
    if (to == RecordState::rejected) return true;
    return static_cast<int>(to) == static_cast<int>(from) + 1;
}

std::string to_json_line(const JournalEntry& e) {
    ordered_json j = {{"seq", e.seq}, {"record", e.record_id}, {"from", to_string(e.from)}, {"to", to_string(e.to)}};
    if (e.reason) j["reason"] = to_string(*e.reason);
    if (!e.detail.empty()) j["detail"] = e.detail;
    if (e.sidecar) j["sidecar"] = to_string(*e.sidecar);
    j["digest"] = e.digest;
    return j.dump();
}

JournalEntry entry_from_json_line(std::string_view line) {
    try {
        const auto j = ordered_json::parse(line);
        JournalEntry e;
        e.seq = j.at("seq").get<std::uint64_t>();
        e.record_id = j.at("record").get<std::string>();
        e.from = parse_state(j.at("from").get<std::string>());
        e.to = parse_state(j.at("to").get<std::string>());
        if (j.contains("reason")) e.reason = parse_reason(j.at("reason").get<std::string>());
        if (j.contains("detail")) e.detail = j.at("detail").get<std::string>();
        if (j.contains("sidecar")) e.sidecar = parse_sidecar(j.at("sidecar").get<std::string>());
        e.digest = j.at("digest").get<std::string>();
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw JournalError(std::string("malformed journal entry: ") + ex.what());
    }
}

JournalWriter JournalWriter::create(const std::filesystem::path& path, const JournalHeader& header) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw JournalError("cannot create journal " + path.string());
    out << ordered_json{{"journal", kFormat}, {"config_digest", header.config_digest}}.dump() << '\n';
    out.flush();
    return JournalWriter(std::move(out), 1);
}

JournalWriter JournalWriter::append_to(const std::filesystem::path& path, std::uint64_t next_seq) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw JournalError("cannot open journal " + path.string());
    return JournalWriter(std::move(out), next_seq);
}

const JournalEntry& JournalWriter::append(JournalEntry entry) {
    entry.seq = next_seq_++;
    out_ << to_json_line(entry) << '\n';
    out_.flush();
    if (!out_) throw JournalError("journal write failed");
    last_ = std::move(entry);
    return last_;
}

JournalContents read_journal(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw JournalError("cannot open journal " + path.string());
    JournalContents c;
    std::string line;
    bool have_header = false;
    std::map<std::string, RecordState, std::less<>> state;
    while (std::getline(in, line)) {
        const bool complete = !in.eof();
        if (!complete) {
            // A final line without '\n' is a torn write.
            c.torn_tail = !line.empty();
            break;
        }
        if (!have_header) {
            try {
                const auto j = ordered_json::parse(line);
                if (j.at("journal").get<std::string>() != kFormat) throw JournalError("unsupported journal format");
                c.header.config_digest = j.at("config_digest").get<std::string>();
            } catch (const nlohmann::json::exception& ex) {
                throw JournalError(std::string("malformed journal header: ") + ex.what());
            }
            have_header = true;
            c.valid_bytes += line.size() + 1;
            continue;
        }
        JournalEntry e = entry_from_json_line(line);
        if (e.seq != c.entries.size() + 1) throw JournalError("journal sequence gap at seq " + std::to_string(e.seq));
        auto [it, inserted] = state.try_emplace(e.record_id, RecordState::ingested);
        if (e.from != it->second || !is_legal_transition(e.from, e.to)) {
            throw JournalError("illegal transition for " + e.record_id + ": " + std::string(to_string(it->second)) +
                               " -> " + std::string(to_string(e.to)));
        }
        it->second = e.to;
        c.entries.push_back(std::move(e));
        c.valid_bytes += line.size() + 1;
    }
    if (!have_header) throw JournalError("journal has no header: " + path.string());
    return c;
}

LineWriter::LineWriter(const std::filesystem::path& path, bool truncate)
    : out_(path, std::ios::binary | (truncate ? std::ios::trunc : std::ios::app)) {
    if (!out_) throw JournalError("cannot open " + path.string());
}

void LineWriter::write(std::string_view line) {
    out_ << line << '\n';
    out_.flush();
    if (!out_) throw JournalError("sidecar write failed");
}

std::vector<std::string> read_complete_lines(const std::filesystem::path& path) {
    std::vector<std::string> lines;
    std::ifstream in(path, std::ios::binary);
    if (!in) return lines;
    std::string line;
    while (std::getline(in, line)) {
        if (in.eof()) break;
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace revgen::pipeline
