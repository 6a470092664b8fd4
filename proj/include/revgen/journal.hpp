#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace revgen::pipeline {

/// Per-record stage state, in pipeline order. `ingested` is the implicit
/// state before a record's first journal entry.
enum class RecordState { ingested, selected, translated, generated, scored, backtranslated, accepted, rejected };

enum class RejectReason {
    heuristic,
    duplicate,
    not_sampled,
    forward_qe,
    parse_failure,
    alignment,
    judge_score,
    judge_unparseable,
    backtranslation_qe,
    provider_error,
};

std::string_view to_string(RecordState s);
std::string_view to_string(RejectReason r);
RecordState parse_state(std::string_view s);
RejectReason parse_reason(std::string_view s);

inline bool is_terminal(RecordState s) { return s == RecordState::accepted || s == RecordState::rejected; }

/// Forward by exactly one stage, or to rejected from any non-terminal state.
bool is_legal_transition(RecordState from, RecordState to);

/// Stage-local sidecar files holding the texts a journal entry digests.
enum class Sidecar { translated, generated, scored, backtranslated };

std::string_view to_string(Sidecar s);
Sidecar parse_sidecar(std::string_view s);
std::filesystem::path sidecar_path(const std::filesystem::path& run_dir, Sidecar s);

struct JournalEntry {
    std::uint64_t seq = 0;  // logical clock; one tick per entry
    std::string record_id;
    RecordState from = RecordState::ingested;
    RecordState to = RecordState::ingested;
    std::optional<RejectReason> reason;
    std::string detail;
    std::optional<Sidecar> sidecar;
    std::string digest;

    friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
};

std::string to_json_line(const JournalEntry& e);
JournalEntry entry_from_json_line(std::string_view line);

struct JournalHeader {
    std::string config_digest;
};

class JournalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Append-only writer. Every line is flushed before append() returns.
class JournalWriter {
public:
    /// Creates a new journal holding only the header line.
    static JournalWriter create(const std::filesystem::path& path, const JournalHeader& header);
    /// Continues an existing journal at `next_seq`.
    static JournalWriter append_to(const std::filesystem::path& path, std::uint64_t next_seq);

    /// Assigns the next sequence number and writes the entry.
    const JournalEntry& append(JournalEntry entry);
    std::uint64_t next_seq() const noexcept { return next_seq_; }

private:
    JournalWriter(std::ofstream out, std::uint64_t next_seq) : out_(std::move(out)), next_seq_(next_seq) {}

    std::ofstream out_;
    std::uint64_t next_seq_;
    JournalEntry last_;
};

struct JournalContents {
    JournalHeader header;
    std::vector<JournalEntry> entries;
    std::uintmax_t valid_bytes = 0;  // length of the well-formed prefix
    bool torn_tail = false;          // trailing partial line present
};

/// Reads a journal, tolerating one torn trailing line. Throws JournalError on
/// a malformed header, a malformed interior line, a sequence gap, or an
/// illegal transition.
JournalContents read_journal(const std::filesystem::path& path);

/// Line-oriented append-only writer for sidecar files.
class LineWriter {
public:
    LineWriter() = default;
    LineWriter(const std::filesystem::path& path, bool truncate);
    void write(std::string_view line);

private:
    std::ofstream out_;
};

/// Complete lines of a file; a trailing line without '\n' is dropped.
std::vector<std::string> read_complete_lines(const std::filesystem::path& path);

}  // namespace revgen::pipeline
