#pragma once

#include "revgen/config.hpp"
#include "revgen/corpus.hpp"
#include "revgen/dataset.hpp"
#include "revgen/errors.hpp"
#include "revgen/journal.hpp"
#include "revgen/judge.hpp"
#include "revgen/providers.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace revgen::pipeline {

/// The evolving per-record tuple (R_x, R_en, I_en, s, I_x) and its stage state.
struct CandidatePair {
    std::string record_id;
    corpus::TextFragment fragment;
    std::optional<std::string> response_en;
    std::optional<providers::QualityEstimate> forward_qe;
    std::optional<std::string> template_id;
    std::optional<std::string> instruction_en;
    std::optional<std::string> answer_letter;
    std::optional<judge::JudgeVerdict> verdict;
    std::optional<std::string> instruction_x;
    std::optional<providers::QualityEstimate> backward_qe;
    RecordState state = RecordState::ingested;
    std::optional<RejectReason> reject_reason;
    std::string reject_detail;
};

/// Journal and config digests disagree, or the journal does not belong to the input.
class ResumeError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Too many records failed on provider errors; the run stopped and can be resumed.
class ProviderExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Test seams around every journal append. An exception thrown from a hook
/// propagates out of run()/resume() and leaves the run directory exactly as a
/// crash at that point would.
struct RunHooks {
    std::function<void(const JournalEntry&)> before_append;  // sidecar line (if any) already written
    std::function<void(const JournalEntry&)> after_append;
};

struct RunSummary {
    std::size_t ingested = 0;
    std::size_t accepted = 0;
    std::map<RejectReason, std::size_t> rejected;
    std::size_t ingest_errors = 0;
    std::size_t journal_entries = 0;
    bool resumed = false;

    std::size_t total_rejected() const;
    std::string to_json() const;
};

std::filesystem::path journal_path(const std::filesystem::path& run_dir);
std::filesystem::path dataset_path(const std::filesystem::path& run_dir);
std::filesystem::path summary_path(const std::filesystem::path& run_dir);

/// Mock or HTTP providers as the config declares (without in-flight limits;
/// run() and resume() add those).
providers::ProviderSet make_providers(const RunConfig& cfg);

/// Fresh run into cfg.output_dir. Refuses to overwrite an existing journal.
RunSummary run(const RunConfig& cfg, const providers::ProviderSet& providers, const RunHooks& hooks = {});

/// Continues the run whose journal is given; the run directory is the journal's directory.
RunSummary resume(const std::filesystem::path& journal, const RunConfig& cfg, const providers::ProviderSet& providers,
                  const RunHooks& hooks = {});

struct ProvenanceContext {
    ModelIds model_ids;
    std::uint64_t seed = 0;
    double judge_temperature = 0.0;
};

/// Rows for accepted records with judge score >= lambda, ordered by record id.
std::vector<DatasetRow> dataset_rows(std::span<const CandidatePair> records, int lambda, const ProvenanceContext& ctx);

/// Writes dataset_rows() as JSONL. Throws if any record is not terminal.
void emit_dataset(const std::filesystem::path& path, std::span<const CandidatePair> records, int lambda,
                  const ProvenanceContext& ctx);

/// Per-record state rebuilt from a journal and its sidecars. Fragment texts
/// are not part of the journal and stay empty.
std::vector<CandidatePair> load_journal_records(const std::filesystem::path& journal);

}  // namespace revgen::pipeline
