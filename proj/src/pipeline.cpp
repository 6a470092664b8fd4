#include "revgen/pipeline.hpp"

#include "revgen/hash.hpp"
#include "revgen/http_provider.hpp"
#include "revgen/mock_providers.hpp"
#include "revgen/mt_gate.hpp"
#include "revgen/promptkit.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace revgen::pipeline {

using nlohmann::ordered_json;

std::size_t RunSummary::total_rejected() const {
    std::size_t n = 0;
    for (const auto& [r, c] : rejected) n += c;
    return n;
}

std::string RunSummary::to_json() const {
    ordered_json rej = ordered_json::object();
    for (auto r : {RejectReason::heuristic, RejectReason::duplicate, RejectReason::not_sampled,
                   RejectReason::forward_qe, RejectReason::parse_failure, RejectReason::alignment,
                   RejectReason::judge_score, RejectReason::judge_unparseable, RejectReason::backtranslation_qe,
                   RejectReason::provider_error}) {
        auto it = rejected.find(r);
        rej[std::string(to_string(r))] = it == rejected.end() ? 0 : it->second;
    }
    ordered_json j = {{"ingested", ingested},
                      {"accepted", accepted},
                      {"rejected", std::move(rej)},
                      {"ingest_errors", ingest_errors},
                      {"journal_entries", journal_entries}};
    return j.dump(2);
}

std::filesystem::path journal_path(const std::filesystem::path& run_dir) { return run_dir / "journal.jsonl"; }
std::filesystem::path dataset_path(const std::filesystem::path& run_dir) { return run_dir / "dataset.jsonl"; }
std::filesystem::path summary_path(const std::filesystem::path& run_dir) { return run_dir / "summary.json"; }

providers::ProviderSet make_providers(const RunConfig& cfg) {
    if (cfg.providers.mode == ProvidersConfig::Mode::mock) {
        auto opts = cfg.providers.mock;
        opts.seed = cfg.seed;
        return providers::make_mock_providers(opts, cfg.load_pool(), cfg.load_scoring());
    }
    auto endpoint = [&](const EndpointConfig& e, int default_timeout_ms) {
        providers::HttpEndpoint ep;
        ep.base_url = e.url;
        if (!e.url_env.empty()) {
            const char* v = std::getenv(e.url_env.c_str());
            if (!v || !*v) throw ConfigError("environment variable " + e.url_env + " is not set");
            ep.base_url = v;
        }
        if (!e.token_env.empty()) {
            const char* t = std::getenv(e.token_env.c_str());
            if (t) ep.auth_token = t;
        }
        ep.path = e.path;
        ep.model_id = e.model;
        ep.output_pointer = e.output_pointer;
        ep.timeout = std::chrono::milliseconds(e.timeout_ms.value_or(default_timeout_ms));
        ep.max_retries = cfg.providers.max_retries;
        ep.backoff_base = std::chrono::milliseconds(cfg.providers.backoff_ms);
        return ep;
    };
    return {std::make_shared<providers::HttpGenerator>(endpoint(cfg.providers.llm, 120'000)),
            std::make_shared<providers::HttpTranslator>(endpoint(cfg.providers.mt, 30'000)),
            std::make_shared<providers::HttpQualityEstimator>(endpoint(cfg.providers.qe, 30'000))};
}

namespace {

/// Result of processing one record through one stage.
struct Outcome {
    RecordState to = RecordState::rejected;
    std::optional<RejectReason> reason;
    std::string detail;
    std::optional<Sidecar> sidecar;
    ordered_json payload;
    std::string fragment_id;  // stage A only, folded into the digest
    std::exception_ptr error;
};

Outcome reject(RejectReason r, std::string detail = {}) {
    Outcome o;
    o.to = RecordState::rejected;
    o.reason = r;
    o.detail = std::move(detail);
    return o;
}

std::string record_id_for(std::size_t ordinal) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "r%09zu", ordinal);
    return buf;
}

std::string payload_digest(const std::string& record_id, RecordState to, const std::optional<RejectReason>& reason,
                           const std::string& detail, const std::string& fragment_id) {
    ordered_json j = {{"record", record_id}, {"to", to_string(to)}};
    if (reason) j["reason"] = to_string(*reason);
    if (!detail.empty()) j["detail"] = detail;
    if (!fragment_id.empty()) j["fragment"] = fragment_id;
    return sha256_hex(j.dump());
}

ordered_json qe_json(const providers::QualityEstimate& qe) {
    return {{"score", qe.score}, {"estimator_id", qe.estimator_id}};
}

providers::QualityEstimate qe_from(const ordered_json& j) {
    return {j.at("score").get<double>(), j.at("estimator_id").get<std::string>()};
}

void apply_sidecar(Sidecar sc, CandidatePair& p, const ordered_json& j) {
    switch (sc) {
        case Sidecar::translated:
            p.response_en = j.at("response_en").get<std::string>();
            p.forward_qe = qe_from(j.at("forward_qe"));
            break;
        case Sidecar::generated:
            p.template_id = j.at("template_id").get<std::string>();
            if (j.contains("instruction_en")) p.instruction_en = j.at("instruction_en").get<std::string>();
            if (j.contains("answer_letter")) p.answer_letter = j.at("answer_letter").get<std::string>();
            break;
        case Sidecar::scored:
            if (j.contains("verdict")) {
                const auto& v = j.at("verdict");
                p.verdict = judge::JudgeVerdict{v.at("reasoning").get<std::string>(), v.at("score").get<int>(),
                                                v.at("raw_completion").get<std::string>()};
            }
            break;
        case Sidecar::backtranslated:
            p.instruction_x = j.at("instruction_x").get<std::string>();
            p.backward_qe = qe_from(j.at("backward_qe"));
            break;
    }
}

constexpr std::array kSidecars = {Sidecar::translated, Sidecar::generated, Sidecar::scored, Sidecar::backtranslated};

/// Applies journal entries to `pairs`, reading sidecar lines in order and
/// checking their digests. Returns the number of sidecar lines consumed per sidecar.
std::array<std::size_t, 4> replay_entries(
    const JournalContents& contents, const std::filesystem::path& run_dir, std::vector<CandidatePair>& pairs,
    std::unordered_map<std::string, std::size_t>& index, bool create_missing,
    const std::function<std::string(const JournalEntry&, const CandidatePair&)>& expected_digest) {
    std::array<std::vector<std::string>, 4> lines;
    for (auto sc : kSidecars) lines[static_cast<std::size_t>(sc)] = read_complete_lines(sidecar_path(run_dir, sc));
    std::array<std::size_t, 4> cursor{};

    for (const auto& e : contents.entries) {
        auto it = index.find(e.record_id);
        if (it == index.end()) {
            if (!create_missing) throw ResumeError("journal names unknown record " + e.record_id);
            CandidatePair p;
            p.record_id = e.record_id;
            it = index.emplace(e.record_id, pairs.size()).first;
            pairs.push_back(std::move(p));
        }
        CandidatePair& p = pairs[it->second];
        if (e.sidecar) {
            const auto k = static_cast<std::size_t>(*e.sidecar);
            if (cursor[k] >= lines[k].size()) {
                throw ResumeError("sidecar " + std::string(to_string(*e.sidecar)) + " is missing the line for seq " +
                                  std::to_string(e.seq));
            }
            const std::string& line = lines[k][cursor[k]++];
            if (sha256_hex(line) != e.digest) {
                throw ResumeError("sidecar digest mismatch at seq " + std::to_string(e.seq));
            }
            const auto j = ordered_json::parse(line);
            if (j.at("record").get<std::string>() != e.record_id) {
                throw ResumeError("sidecar record mismatch at seq " + std::to_string(e.seq));
            }
            apply_sidecar(*e.sidecar, p, j);
        } else if (expected_digest && expected_digest(e, p) != e.digest) {
            throw ResumeError("journal payload digest mismatch at seq " + std::to_string(e.seq));
        }
        p.state = e.to;
        p.reject_reason = e.reason;
        p.reject_detail = e.detail;
    }
    return cursor;
}

class Engine {
public:
    Engine(const RunConfig& cfg, const providers::ProviderSet& providers, const RunHooks& hooks,
           std::filesystem::path run_dir)
        : cfg_(cfg),
          hooks_(hooks),
          run_dir_(std::move(run_dir)),
          pool_(cfg.load_pool()),
          scoring_(cfg.load_scoring()),
          providers_(providers::limit_in_flight(providers, cfg.max_in_flight)),
          provenance_{{providers.llm->model_id(), providers.mt->model_id(), providers.qe->model_id()},
                      cfg.seed,
                      cfg.judge.temperature} {}

    RunSummary execute(bool resuming) {
        const std::string digest = cfg_.digest();
        std::filesystem::create_directories(run_dir_);
        build_population();

        const auto jpath = journal_path(run_dir_);
        if (!resuming) {
            if (std::filesystem::exists(jpath)) {
                throw ConfigError("run directory already holds a journal: " + jpath.string() +
                                  " (use resume, or choose another output_dir)");
            }
            for (auto sc : kSidecars) sidecars_[static_cast<std::size_t>(sc)] = LineWriter(sidecar_path(run_dir_, sc), true);
            writer_.emplace(JournalWriter::create(jpath, {digest}));
        } else {
            const JournalContents contents = read_journal(jpath);
            if (contents.header.config_digest != digest) {
                throw ResumeError("config digest does not match the journal; refusing to resume");
            }
            if (contents.torn_tail) std::filesystem::resize_file(jpath, contents.valid_bytes);
            replay(contents);
            writer_.emplace(JournalWriter::append_to(jpath, contents.entries.size() + 1));
            for (auto& p : pairs_) apply_followups(p);
        }

        commit_stage_a();
        run_wave(RecordState::selected, [this](const CandidatePair& p) { return translate_response(p); });
        run_wave(RecordState::translated, [this](const CandidatePair& p) { return generate_instruction(p); });
        run_wave(RecordState::generated, [this](const CandidatePair& p) { return score_pair(p); });
        run_wave(RecordState::scored, [this](const CandidatePair& p) { return translate_instruction(p); });

        emit_dataset(dataset_path(run_dir_), pairs_, cfg_.lambda, provenance_);
        RunSummary s = summarize();
        s.resumed = resuming;
        write_lines_atomically(summary_path(run_dir_), {s.to_json()});
        return s;
    }

private:
    void build_population() {
        std::ifstream in(cfg_.input, std::ios::binary);
        if (!in) throw ConfigError("cannot open input " + cfg_.input.string());
        auto ingested = corpus::ingest_fragments(in, cfg_.language, cfg_.source);
        ingest_errors_ = ingested.errors.size();
        auto& frags = ingested.fragments;
        if (frags.size() > 999'999'999) throw ConfigError("input exceeds the supported record count");

        pairs_.resize(frags.size());
        stage_a_.resize(frags.size());
        std::unordered_map<std::string, std::size_t> first;
        for (std::size_t i = 0; i < frags.size(); ++i) {
            pairs_[i].record_id = record_id_for(i + 1);
            pairs_[i].fragment = frags[i];
            index_.emplace(pairs_[i].record_id, i);
            stage_a_[i].fragment_id = frags[i].id;
            if (!first.try_emplace(frags[i].id, i).second) stage_a_[i] = with_fragment(reject(RejectReason::duplicate, "exact"), frags[i].id);
        }

        const auto deduped = corpus::exact_dedup(frags);
        const auto near = corpus::near_dedup(deduped, cfg_.filter);
        std::unordered_set<std::string> near_survivors;
        for (const auto& f : near) near_survivors.insert(f.id);

        std::vector<corpus::TextFragment> accepted;
        for (const auto& f : deduped) {
            const std::size_t i = first.at(f.id);
            if (!near_survivors.contains(f.id)) {
                stage_a_[i] = with_fragment(reject(RejectReason::duplicate, "near"), f.id);
                continue;
            }
            auto filtered = corpus::apply_filter(f, cfg_.filter);
            pairs_[i].fragment = filtered;
            if (filtered.status == corpus::FragmentStatus::rejected) {
                stage_a_[i] = with_fragment(
                    reject(RejectReason::heuristic, std::string(corpus::to_string(*filtered.reject_reason))), f.id);
            } else {
                accepted.push_back(std::move(filtered));
            }
        }

        std::unordered_set<std::string> chosen;
        const auto sample = cfg_.sample_size == 0 ? accepted
                                                  : corpus::sample_fragments(accepted, cfg_.sample_size, cfg_.seed);
        for (const auto& f : sample) chosen.insert(f.id);
        for (const auto& f : accepted) {
            const std::size_t i = first.at(f.id);
            if (chosen.contains(f.id)) {
                Outcome o;
                o.to = RecordState::selected;
                stage_a_[i] = with_fragment(std::move(o), f.id);
            } else {
                stage_a_[i] = with_fragment(reject(RejectReason::not_sampled), f.id);
            }
        }
    }

    static Outcome with_fragment(Outcome o, const std::string& id) {
        o.fragment_id = id;
        return o;
    }

    void replay(const JournalContents& contents) {
        auto expected = [this](const JournalEntry& e, const CandidatePair& p) {
            const std::size_t i = index_.at(p.record_id);
            const std::string fid = e.from == RecordState::ingested ? stage_a_[i].fragment_id : std::string{};
            return payload_digest(e.record_id, e.to, e.reason, e.detail, fid);
        };
        const auto consumed = replay_entries(contents, run_dir_, pairs_, index_, false, expected);
        for (auto sc : kSidecars) {
            const auto k = static_cast<std::size_t>(sc);
            const auto path = sidecar_path(run_dir_, sc);
            auto lines = read_complete_lines(path);
            lines.resize(consumed[k]);
            LineWriter w(path, true);
            for (const auto& l : lines) w.write(l);
            sidecars_[k] = LineWriter(path, false);
        }
        for (const auto& p : pairs_) {
            if (p.reject_reason == RejectReason::provider_error) ++provider_errors_;
        }
    }

    void commit_stage_a() {
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (pairs_[i].state == RecordState::ingested) commit(i, stage_a_[i]);
        }
    }

    template <typename Compute>
    void run_wave(RecordState input, Compute compute) {
        std::vector<std::size_t> pending;
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (pairs_[i].state == input) pending.push_back(i);
        }
        if (pending.empty()) return;

        const std::size_t n = pending.size();
        std::vector<Outcome> results(n);
        std::vector<char> ready(n, 0);
        std::mutex mu;
        std::condition_variable cv;
        std::atomic<std::size_t> next{0};
        std::atomic<bool> stop{false};

        auto worker = [&] {
            while (!stop.load()) {
                const std::size_t k = next.fetch_add(1);
                if (k >= n) break;
                Outcome o;
                try {
                    o = compute(pairs_[pending[k]]);
                } catch (...) {
                    o.error = std::current_exception();
                }
                {
                    std::lock_guard lock(mu);
                    results[k] = std::move(o);
                    ready[k] = 1;
                }
                cv.notify_all();
            }
        };

        std::vector<std::jthread> threads;
        const std::size_t nthreads = std::min(cfg_.workers, n);
        threads.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);

        try {
            for (std::size_t k = 0; k < n; ++k) {
                Outcome o;
                {
                    std::unique_lock lock(mu);
                    cv.wait(lock, [&] { return ready[k] != 0; });
                    o = std::move(results[k]);
                }
                if (o.error) std::rethrow_exception(o.error);
                commit(pending[k], std::move(o));
            }
        } catch (...) {
            stop.store(true);
            threads.clear();
            throw;
        }
    }

    void commit(std::size_t i, Outcome o) {
        CandidatePair& p = pairs_[i];
        if (o.reason == RejectReason::provider_error && ++provider_errors_ > cfg_.max_provider_errors) {
            throw ProviderExhausted("provider errors exceeded max_provider_errors (" +
                                    std::to_string(cfg_.max_provider_errors) + "); last: " + o.detail);
        }
        std::string digest;
        if (o.sidecar) {
            o.payload["record"] = p.record_id;
            // Keep "record" first in the line.
            ordered_json line_json = {{"record", p.record_id}};
            for (auto it = o.payload.begin(); it != o.payload.end(); ++it) {
                if (it.key() != "record") line_json[it.key()] = it.value();
            }
            const std::string line = line_json.dump();
            sidecars_[static_cast<std::size_t>(*o.sidecar)].write(line);
            digest = sha256_hex(line);
            apply_sidecar(*o.sidecar, p, line_json);
        } else {
            digest = payload_digest(p.record_id, o.to, o.reason, o.detail, o.fragment_id);
        }
        append(p, o.to, o.reason, std::move(o.detail), o.sidecar, std::move(digest));
        apply_followups(p);
    }

    void append(CandidatePair& p, RecordState to, std::optional<RejectReason> reason, std::string detail,
                std::optional<Sidecar> sidecar, std::string digest) {
        JournalEntry e;
        e.seq = writer_->next_seq();
        e.record_id = p.record_id;
        e.from = p.state;
        e.to = to;
        e.reason = reason;
        e.detail = std::move(detail);
        e.sidecar = sidecar;
        e.digest = std::move(digest);
        if (!is_legal_transition(e.from, e.to)) {
            throw std::logic_error("illegal transition for " + p.record_id);
        }
        if (hooks_.before_append) hooks_.before_append(e);
        const JournalEntry& written = writer_->append(std::move(e));
        p.state = written.to;
        p.reject_reason = written.reason;
        p.reject_detail = written.detail;
        if (hooks_.after_append) hooks_.after_append(written);
    }

    /// Transitions fully determined by data already journaled.
    void apply_followups(CandidatePair& p) {
        if (p.state == RecordState::scored && p.verdict &&
            judge::apply_threshold(*p.verdict, cfg_.lambda) == judge::Decision::drop) {
            const std::string detail = "score=" + std::to_string(p.verdict->score);
            const auto digest = payload_digest(p.record_id, RecordState::rejected, RejectReason::judge_score, detail, {});
            append(p, RecordState::rejected, RejectReason::judge_score, detail, std::nullopt, digest);
        } else if (p.state == RecordState::backtranslated) {
            const auto digest = payload_digest(p.record_id, RecordState::accepted, std::nullopt, {}, {});
            append(p, RecordState::accepted, std::nullopt, {}, std::nullopt, digest);
        }
    }

    mt_gate::GateContext gate() const { return {*providers_.mt, *providers_.qe, cfg_.qe_threshold}; }

    // Stage B: R_x -> R_en with the forward QE gate.
    Outcome translate_response(const CandidatePair& p) {
        try {
            const auto g = mt_gate::forward_translate(p.fragment, gate());
            Outcome o;
            o.sidecar = Sidecar::translated;
            o.payload = {{"response_en", g.text}, {"forward_qe", qe_json(g.qe)}};
            if (g.passed) {
                o.to = RecordState::translated;
            } else {
                o.to = RecordState::rejected;
                o.reason = RejectReason::forward_qe;
            }
            return o;
        } catch (const mt_gate::GateError& e) {
            return reject(RejectReason::provider_error, std::string(providers::to_string(e.kind())));
        }
    }

    // Stage C: I_en from a randomly chosen task prompt.
    Outcome generate_instruction(const CandidatePair& p) {
        const auto& tmpl = promptkit::select_template(pool_, cfg_.seed, p.record_id);
        providers::GenerationRequest req;
        req.prompt = promptkit::render_instruction_prompt(tmpl, *p.response_en);
        req.max_output_chars = cfg_.generation.max_output_chars;
        req.temperature = cfg_.generation.temperature;
        req.top_p = cfg_.generation.top_p;
        req.seed = derive_seed(cfg_.seed, p.record_id, "generate");
        std::string completion;
        try {
            completion = providers_.llm->generate(req);
        } catch (const providers::ProviderError& e) {
            return reject(RejectReason::provider_error, std::string(providers::to_string(e.kind())));
        }

        Outcome o;
        o.sidecar = Sidecar::generated;
        o.payload = {{"template_id", tmpl.id}, {"completion", completion}};
        auto parsed = promptkit::parse_generation(tmpl, completion);
        if (const auto* failure = std::get_if<promptkit::ParseFailure>(&parsed)) {
            o.to = RecordState::rejected;
            o.reason = RejectReason::parse_failure;
            o.detail = failure->describe();
            return o;
        }
        const auto& instr = std::get<promptkit::ParsedInstruction>(parsed);
        o.payload["instruction_en"] = instr.instruction_en;
        ordered_json sections = ordered_json::object();
        for (const auto& [label, text] : instr.sections) sections[label] = text;
        o.payload["sections"] = std::move(sections);
        if (tmpl.kind == promptkit::TaskKind::multiple_choice) {
            if (const auto* ans = instr.section("Answer:")) {
                if (auto letter = promptkit::answer_letter(*ans)) o.payload["answer_letter"] = std::string(1, *letter);
            }
        }
        if (auto violation = promptkit::validate_alignment(tmpl, instr, *p.response_en)) {
            o.to = RecordState::rejected;
            o.reason = RejectReason::alignment;
            o.detail = std::string(promptkit::to_string(*violation));
            return o;
        }
        o.to = RecordState::generated;
        return o;
    }

    // Stage D: judge score, one retry on an unparseable verdict.
    Outcome score_pair(const CandidatePair& p) {
        providers::GenerationRequest req;
        req.prompt = judge::render_score_prompt(scoring_, *p.instruction_en, *p.response_en);
        req.max_output_chars = cfg_.judge.max_output_chars;
        req.temperature = cfg_.judge.temperature;
        req.top_p = cfg_.judge.top_p;

        Outcome o;
        o.sidecar = Sidecar::scored;
        ordered_json attempts = ordered_json::array();
        std::string failure;
        for (int attempt = 1; attempt <= 2; ++attempt) {
            req.seed = derive_seed(cfg_.seed, p.record_id, "judge#" + std::to_string(attempt));
            std::string completion;
            try {
                completion = providers_.llm->generate(req);
            } catch (const providers::ProviderError& e) {
                return reject(RejectReason::provider_error, std::string(providers::to_string(e.kind())));
            }
            attempts.push_back(completion);
            auto verdict = judge::parse_verdict(completion, scoring_.score_label);
            if (const auto* v = std::get_if<judge::JudgeVerdict>(&verdict)) {
                o.payload = {{"attempts", std::move(attempts)},
                             {"verdict", {{"reasoning", v->reasoning}, {"score", v->score}, {"raw_completion", v->raw_completion}}}};
                o.to = RecordState::scored;
                return o;
            }
            failure = std::string(judge::to_string(std::get<judge::VerdictParseFailure>(verdict).reason));
        }
        o.payload = {{"attempts", std::move(attempts)}, {"failure", failure}};
        o.to = RecordState::rejected;
        o.reason = RejectReason::judge_unparseable;
        o.detail = failure;
        return o;
    }

    // Stage E: I_en -> I_x with the backward QE gate.
    Outcome translate_instruction(const CandidatePair& p) {
        try {
            const auto g = mt_gate::back_translate(*p.instruction_en, p.fragment.language, gate(), p.record_id);
            Outcome o;
            o.sidecar = Sidecar::backtranslated;
            o.payload = {{"instruction_x", g.text}, {"backward_qe", qe_json(g.qe)}};
            if (g.passed) {
                o.to = RecordState::backtranslated;
            } else {
                o.to = RecordState::rejected;
                o.reason = RejectReason::backtranslation_qe;
            }
            return o;
        } catch (const mt_gate::GateError& e) {
            return reject(RejectReason::provider_error, std::string(providers::to_string(e.kind())));
        }
    }

    RunSummary summarize() const {
        RunSummary s;
        s.ingested = pairs_.size();
        s.ingest_errors = ingest_errors_;
        s.journal_entries = writer_->next_seq() - 1;
        for (const auto& p : pairs_) {
            if (p.state == RecordState::accepted) {
                ++s.accepted;
            } else if (p.state == RecordState::rejected) {
                ++s.rejected[*p.reject_reason];
            }
        }
        return s;
    }

    const RunConfig& cfg_;
    const RunHooks& hooks_;
    std::filesystem::path run_dir_;
    std::vector<promptkit::TaskTemplate> pool_;
    promptkit::ScoringTemplate scoring_;
    providers::ProviderSet providers_;
    ProvenanceContext provenance_;

    std::vector<CandidatePair> pairs_;
    std::vector<Outcome> stage_a_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t ingest_errors_ = 0;
    std::size_t provider_errors_ = 0;
    std::optional<JournalWriter> writer_;
    std::array<LineWriter, 4> sidecars_;
};

}  // namespace

RunSummary run(const RunConfig& cfg, const providers::ProviderSet& providers, const RunHooks& hooks) {
    cfg.validate();
    Engine engine(cfg, providers, hooks, cfg.output_dir);
    return engine.execute(false);
}

RunSummary resume(const std::filesystem::path& journal, const RunConfig& cfg, const providers::ProviderSet& providers,
                  const RunHooks& hooks) {
    cfg.validate();
    if (!std::filesystem::is_regular_file(journal)) throw ConfigError("journal not found: " + journal.string());
    Engine engine(cfg, providers, hooks, journal.parent_path());
    return engine.execute(true);
}

std::vector<DatasetRow> dataset_rows(std::span<const CandidatePair> records, int lambda, const ProvenanceContext& ctx) {
    std::vector<const CandidatePair*> keep;
    for (const auto& p : records) {
        if (!is_terminal(p.state)) throw std::logic_error("record " + p.record_id + " is not terminal");
        if (p.state != RecordState::accepted) continue;
        if (judge::apply_threshold(*p.verdict, lambda) == judge::Decision::keep) keep.push_back(&p);
    }
    std::sort(keep.begin(), keep.end(), [](const auto* a, const auto* b) { return a->record_id < b->record_id; });
    std::vector<DatasetRow> rows;
    rows.reserve(keep.size());
    for (const auto* p : keep) {
        DatasetRow r;
        r.instruction = *p->instruction_x;
        r.response = p->fragment.text;
        r.language = p->fragment.language;
        auto& pv = r.provenance;
        pv.record_id = p->record_id;
        pv.template_id = *p->template_id;
        pv.judge_score = p->verdict->score;
        pv.forward_qe = p->forward_qe->score;
        pv.backward_qe = p->backward_qe->score;
        pv.model_ids = ctx.model_ids;
        pv.seed = ctx.seed;
        pv.instruction_en = *p->instruction_en;
        pv.answer_letter = p->answer_letter;
        pv.judge_temperature = ctx.judge_temperature;
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_dataset(const std::filesystem::path& path, std::span<const CandidatePair> records, int lambda,
                  const ProvenanceContext& ctx) {
    std::vector<std::string> lines;
    for (const auto& row : dataset_rows(records, lambda, ctx)) lines.push_back(to_json_line(row));
    write_lines_atomically(path, lines);
}

std::vector<CandidatePair> load_journal_records(const std::filesystem::path& journal) {
    const auto contents = read_journal(journal);
    std::vector<CandidatePair> pairs;
    std::unordered_map<std::string, std::size_t> index;
    replay_entries(contents, journal.parent_path(), pairs, index, true, {});
    return pairs;
}

}  // namespace revgen::pipeline
