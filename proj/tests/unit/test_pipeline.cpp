#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "revgen/errors.hpp"
#include "revgen/mock_providers.hpp"
#include "revgen/pipeline.hpp"
#include "support/fake_server.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/runs.hpp"

#include "json.hpp"

#include <cstdlib>

using namespace revgen;
using namespace revgen::pipeline;

namespace {

RunConfig fixed_mocks(RunConfig cfg) { return runs::with_fixed_mocks(std::move(cfg)); }

RunSummary run_mock(const RunConfig& cfg, const RunHooks& hooks = {}) {
    return run(cfg, make_providers(cfg), hooks);
}

std::size_t rejected(const RunSummary& s, RejectReason r) {
    auto it = s.rejected.find(r);
    return it == s.rejected.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("ten clean fragments are all accepted") {
    oracle::TempDir dir;
    const auto lines = oracle::prose_lines(10, 1);
    const auto cfg = fixed_mocks(runs::mock_config(dir.path(), lines));
    const auto s = run_mock(cfg);
    CHECK(s.ingested == 10);
    CHECK(s.accepted == 10);
    CHECK(s.total_rejected() == 0);

    const auto file = read_dataset(dataset_path(cfg.output_dir));
    REQUIRE(file.rows.size() == 10);
    providers::MockTranslator mt;
    for (std::size_t i = 0; i < 10; ++i) {
        const auto& row = file.rows[i];
        CHECK(row.response == lines[i]);
        CHECK(row.language == "spa");
        CHECK(row.provenance.judge_score == 4);
        CHECK(row.provenance.forward_qe == 0.9);
        CHECK(row.provenance.backward_qe == 0.9);
        CHECK(row.provenance.seed == 17);
        CHECK(row.provenance.model_ids == ModelIds{"mock-llm", "mock-mt", "mock-qe"});
        CHECK(row.provenance.judge_temperature == 0.0);
        // Back-translation is checkable through the reversible mock transform.
        CHECK(mt.translate({row.instruction, "spa", "en"}) == row.provenance.instruction_en);
        if (row.provenance.template_id == "multiple_choice") CHECK(row.provenance.answer_letter.has_value());
    }
    const auto summary = nlohmann::json::parse(oracle::read_file(summary_path(cfg.output_dir)));
    CHECK(summary["accepted"] == 10);
    CHECK_FALSE(summary.contains("resumed"));
}

TEST_CASE("judge scores 2 and 4 alternate; lambda 3 keeps the 4s") {
    oracle::TempDir dir;
    auto lines = oracle::prose_lines(10, 2);
    for (std::size_t i = 0; i < lines.size(); ++i) lines[i] += i % 2 ? " [mock:judge=4]" : " [mock:judge=2]";
    const auto cfg = fixed_mocks(runs::mock_config(dir.path(), lines));
    const auto s = run_mock(cfg);
    CHECK(s.accepted == 5);
    CHECK(rejected(s, RejectReason::judge_score) == 5);
    for (const auto& row : read_dataset(dataset_path(cfg.output_dir)).rows) CHECK(row.provenance.judge_score == 4);
}

TEST_CASE("every rejection reason is counted") {
    oracle::TempDir dir;
    const auto cfg = runs::accounting_config(dir.path());
    const auto s = run_mock(cfg);
    const auto want = runs::accounting_expectations();

    CHECK(s.ingested == fixture::accounting_cases().size());
    CHECK(s.accepted == want.at("accepted"));
    for (const auto& [name, n] : want) {
        if (name == "accepted") continue;
        CHECK_MESSAGE(rejected(s, parse_reason(name)) == n, name);
    }
    CHECK(s.ingested == s.accepted + s.total_rejected());

    const auto records = load_journal_records(journal_path(cfg.output_dir));
    CHECK(records.size() == s.ingested);
    for (const auto& p : records) CHECK(is_terminal(p.state));
}

TEST_CASE("sampling rejects the rest as not_sampled") {
    oracle::TempDir dir;
    auto cfg = fixed_mocks(runs::mock_config(dir.path(), oracle::prose_lines(30, 4)));
    cfg.sample_size = 12;
    const auto s = run_mock(cfg);
    CHECK(s.accepted == 12);
    CHECK(rejected(s, RejectReason::not_sampled) == 18);
}

TEST_CASE("output does not depend on worker count") {
    oracle::TempDir a, b;
    const auto lines = oracle::prose_lines(60, 5);
    auto ca = runs::mock_config(a.path(), lines);
    auto cb = runs::mock_config(b.path(), lines);
    ca.workers = 1;
    cb.workers = 24;
    cb.max_in_flight = 3;
    run_mock(ca);
    run_mock(cb);
    CHECK(runs::snapshot(ca.output_dir) == runs::snapshot(cb.output_dir));
}

TEST_CASE("resume of a finished run is a no-op") {
    oracle::TempDir dir;
    const auto cfg = runs::mock_config(dir.path(), oracle::prose_lines(20, 6));
    const auto first = run_mock(cfg);
    const auto before = runs::snapshot(cfg.output_dir);
    const auto again = resume(journal_path(cfg.output_dir), cfg, make_providers(cfg));
    CHECK(again.resumed);
    CHECK(again.accepted == first.accepted);
    CHECK(again.journal_entries == first.journal_entries);
    CHECK(runs::snapshot(cfg.output_dir) == before);
}

TEST_CASE("resume refuses a changed config") {
    oracle::TempDir dir;
    auto cfg = runs::mock_config(dir.path(), oracle::prose_lines(5, 7));
    run_mock(cfg);
    cfg.lambda = 4;
    CHECK_THROWS_AS(resume(journal_path(cfg.output_dir), cfg, make_providers(cfg)), ResumeError);
    cfg.lambda = 3;
    oracle::write_file(cfg.input, oracle::read_file(cfg.input) + "Una línea más añadida al final del archivo.\n");
    CHECK_THROWS_AS(resume(journal_path(cfg.output_dir), cfg, make_providers(cfg)), ResumeError);
}

TEST_CASE("a fresh run will not overwrite a journal") {
    oracle::TempDir dir;
    const auto cfg = runs::mock_config(dir.path(), oracle::prose_lines(3, 8));
    run_mock(cfg);
    CHECK_THROWS_AS(run_mock(cfg), ConfigError);
}

TEST_CASE("provider exhaustion stops the run and resume finishes it") {
    oracle::TempDir dir, ref;
    auto lines = oracle::prose_lines(12, 9);
    for (int i : {2, 5, 8}) lines[static_cast<std::size_t>(i)] = "[mock:fail=mt] " + lines[static_cast<std::size_t>(i)];
    auto cfg = runs::mock_config(dir.path(), lines);
    cfg.max_provider_errors = 1;
    CHECK_THROWS_AS(run_mock(cfg), ProviderExhausted);
    CHECK_FALSE(std::filesystem::exists(dataset_path(cfg.output_dir)));

    cfg.max_provider_errors = 10;
    const auto s = resume(journal_path(cfg.output_dir), cfg, make_providers(cfg));
    CHECK(rejected(s, RejectReason::provider_error) == 3);

    auto rcfg = runs::mock_config(ref.path(), lines);
    run_mock(rcfg);
    CHECK(runs::snapshot(cfg.output_dir) == runs::snapshot(rcfg.output_dir));
}

TEST_CASE("emission filters by lambda and round trips") {
    auto pair = [](const std::string& id, int score) {
        CandidatePair p;
        p.record_id = id;
        p.fragment = corpus::make_fragment("spa", "respuesta " + id);
        p.response_en = "response " + id;
        p.forward_qe = providers::QualityEstimate{0.8, "q"};
        p.template_id = "open_instruction";
        p.instruction_en = "Explain " + id;
        p.verdict = judge::JudgeVerdict{"", score, "Score: " + std::to_string(score)};
        p.instruction_x = "Explica " + id;
        p.backward_qe = providers::QualityEstimate{0.75, "q"};
        p.state = RecordState::accepted;
        return p;
    };
    const std::vector<CandidatePair> recs = {pair("r3", 5), pair("r1", 3), pair("r2", 4)};
    const ProvenanceContext ctx{{"l", "m", "q"}, 1, 0.0};
    const auto rows5 = dataset_rows(recs, 5, ctx);
    REQUIRE(rows5.size() == 1);
    CHECK(rows5[0].provenance.judge_score == 5);
    const auto rows3 = dataset_rows(recs, 3, ctx);
    REQUIRE(rows3.size() == 3);
    CHECK(rows3[0].provenance.record_id == "r1");

    oracle::TempDir dir;
    emit_dataset(dir / "d.jsonl", recs, 3, ctx);
    CHECK(read_dataset(dir / "d.jsonl").rows == rows3);
    emit_dataset(dir / "empty.jsonl", std::vector<CandidatePair>{}, 3, ctx);
    CHECK(oracle::read_file(dir / "empty.jsonl").empty());

    auto open = recs;
    open[0].state = RecordState::scored;
    CHECK_THROWS(emit_dataset(dir / "x.jsonl", open, 3, ctx));
}

TEST_CASE("http providers: tokens never reach run artifacts") {
    // Fake remote services answering like the mocks.
    const auto pool = promptkit::default_task_pool();
    providers::MockOptions mo;
    mo.seed = 17;
    auto mocks = providers::make_mock_providers(mo, pool, promptkit::default_scoring_template());
    fake::Server server([&](const httplib::Request& req, httplib::Response& res) {
        const auto j = nlohmann::json::parse(req.body);
        nlohmann::json out;
        const auto& in = j["input"];
        if (j["task"] == "generate") {
            providers::GenerationRequest g;
            g.prompt = in["prompt"];
            g.seed = j["params"]["seed"].get<std::uint64_t>();
            out["output"] = mocks.llm->generate(g);
        } else if (j["task"] == "translate") {
            out["output"] = mocks.mt->translate({in["text"], in["source_lang"], in["target_lang"]});
        } else {
            out["output"] = mocks.qe->estimate_quality(in["source"].get<std::string>(),
                                                       in["translation"].get<std::string>()).score;
        }
        res.set_content(out.dump(), "application/json");
    });

    oracle::TempDir dir;
    auto cfg = runs::mock_config(dir.path(), oracle::prose_lines(8, 10));
    cfg.providers.mode = ProvidersConfig::Mode::http;
    for (auto* e : {&cfg.providers.llm, &cfg.providers.mt, &cfg.providers.qe}) {
        e->url_env = "REVGEN_TEST_URL";
        e->token_env = "REVGEN_TEST_TOKEN";
        e->model = "remote";
    }
    ::setenv("REVGEN_TEST_URL", server.url().c_str(), 1);
    ::setenv("REVGEN_TEST_TOKEN", "tok-5f1e-not-for-disk", 1);
    const auto s = run(cfg, make_providers(cfg));
    CHECK(s.ingested == 8);
    CHECK(s.ingested == s.accepted + s.total_rejected());
    for (const auto& [name, content] : runs::snapshot(cfg.output_dir)) {
        CHECK_MESSAGE(content.find("tok-5f1e-not-for-disk") == std::string::npos, name);
    }
    ::unsetenv("REVGEN_TEST_URL");
    CHECK_THROWS_AS(make_providers(cfg), ConfigError);
}
