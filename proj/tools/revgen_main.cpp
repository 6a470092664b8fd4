// revgen command line: corpus ingest, pipeline runs, filtering and reports.

#include "revgen/corpus.hpp"
#include "revgen/dataset.hpp"
#include "revgen/diversity.hpp"
#include "revgen/errors.hpp"
#include "revgen/journal.hpp"
#include "revgen/pipeline.hpp"
#include "revgen/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitProviders = 3;

using namespace revgen;

void write_text(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    pipeline::write_lines_atomically(out, {text.ends_with('\n') ? text.substr(0, text.size() - 1) : text});
}

int cmd_ingest(const std::string& lang, const std::string& in_path, const std::string& out_path,
               const std::string& source) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + in_path);
    corpus::FilterConfig filter;
    auto ingested = corpus::ingest_fragments(in, lang, corpus::parse_source(source));
    for (const auto& e : ingested.errors) std::cerr << in_path << ':' << e.line_no << ": " << e.message << '\n';

    const auto deduped = corpus::exact_dedup(ingested.fragments);
    const auto near = corpus::near_dedup(deduped, filter);
    std::vector<std::string> lines;
    std::map<std::string, std::size_t> rejected;
    std::size_t accepted = 0;
    for (const auto& f : near) {
        auto g = corpus::apply_filter(f, filter);
        if (g.status == corpus::FragmentStatus::accepted) {
            ++accepted;
        } else {
            ++rejected[std::string(corpus::to_string(*g.reject_reason))];
        }
        lines.push_back(corpus::to_json_line(g));
    }
    pipeline::write_lines_atomically(out_path, lines);

    std::cerr << "fragments " << ingested.fragments.size() << ", invalid lines " << ingested.errors.size()
              << ", exact duplicates " << ingested.fragments.size() - deduped.size() << ", near duplicates "
              << deduped.size() - near.size() << ", accepted " << accepted;
    for (const auto& [reason, n] : rejected) std::cerr << ", " << reason << ' ' << n;
    std::cerr << '\n';
    return kExitOk;
}

int cmd_run(const std::string& config_path) {
    const auto cfg = pipeline::load_run_config(config_path);
    const auto summary = pipeline::run(cfg, pipeline::make_providers(cfg));
    std::cout << summary.to_json() << '\n';
    return kExitOk;
}

int cmd_resume(const std::string& journal, const std::string& config_path) {
    const auto cfg = pipeline::load_run_config(config_path);
    const auto summary = pipeline::resume(journal, cfg, pipeline::make_providers(cfg));
    std::cout << summary.to_json() << '\n';
    return kExitOk;
}

int cmd_filter(int lambda, const std::string& in, const std::string& out) {
    if (lambda < 1 || lambda > 5) throw ConfigError("--lambda must be in 1..5");
    const auto file = pipeline::read_dataset(in);
    if (file.malformed > 0) std::cerr << "skipped " << file.malformed << " malformed line(s)\n";
    const auto kept = pipeline::filter_lines_by_lambda(file.lines, lambda);
    pipeline::write_lines_atomically(out, kept);
    std::cerr << "kept " << kept.size() << " of " << file.lines.size() << '\n';
    return kExitOk;
}

std::vector<int> parse_lambdas(const std::string& spec) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw ConfigError("bad lambda list: " + spec);
        }
    }
    if (out.empty()) throw ConfigError("empty lambda list");
    return out;
}

int cmd_sweep(const std::string& lambdas, const std::string& in, const std::string& out_dir) {
    const auto file = pipeline::read_dataset(in);
    const auto ls = parse_lambdas(lambdas);
    const auto points = report::sweep(file.lines, ls);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& p : points) {
            pipeline::write_lines_atomically(std::filesystem::path(out_dir) /
                                                 ("dataset.lambda" + std::to_string(p.lambda) + ".jsonl"),
                                             p.lines);
        }
    }
    std::cout << report::to_csv(points);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"revgen: reverse-instruction dataset generation"};
    app.require_subcommand(1);

    std::string lang, in, out, source = "monolingual_corpus", config, journal, annotations, lambdas, out_dir;
    int lambda = 3;

    auto* ingest = app.add_subcommand("ingest", "Ingest, deduplicate and filter a line-delimited corpus");
    ingest->add_option("--lang", lang, "ISO 639-3 language code")->required();
    ingest->add_option("--in", in, "UTF-8 text, one fragment per line")->required();
    ingest->add_option("--out", out, "Fragment JSONL")->required();
    ingest->add_option("--source", source, "monolingual_corpus | existing_nlp_answer");

    auto* run = app.add_subcommand("run", "Run the pipeline from a config file");
    run->add_option("--config", config)->required();

    auto* resume = app.add_subcommand("resume", "Resume an interrupted run from its journal");
    resume->add_option("--journal", journal)->required();
    resume->add_option("--config", config)->required();

    auto* filter = app.add_subcommand("filter", "Keep dataset rows with judge score >= lambda");
    filter->add_option("--lambda", lambda)->required();
    filter->add_option("--in", in)->required();
    filter->add_option("--out", out)->required();

    auto* rep = app.add_subcommand("report", "Dataset analysis reports (CSV on stdout or --out)");
    rep->require_subcommand(1);
    auto* lengths = rep->add_subcommand("lengths", "role,count,mean_chars,stddev_chars");
    lengths->add_option("--in", in)->required();
    lengths->add_option("--out", out);
    auto* scores = rep->add_subcommand("scores", "score,count");
    scores->add_option("--journal", journal)->required();
    scores->add_option("--out", out);
    auto* diversity = rep->add_subcommand("diversity", "verb,noun,count");
    diversity->add_option("--in", in)->required();
    diversity->add_option("--annotations", annotations, "JSONL with record_id, verb, noun");
    diversity->add_option("--out", out);

    auto* sweep = app.add_subcommand("sweep", "Per-lambda dataset variants; lambda,size on stdout");
    sweep->add_option("--lambdas", lambdas, "e.g. 1,2,3,4,5")->required();
    sweep->add_option("--in", in)->required();
    sweep->add_option("--out-dir", out_dir, "write dataset.lambda<N>.jsonl here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(lang, in, out, source);
        if (run->parsed()) return cmd_run(config);
        if (resume->parsed()) return cmd_resume(journal, config);
        if (filter->parsed()) return cmd_filter(lambda, in, out);
        if (sweep->parsed()) return cmd_sweep(lambdas, in, out_dir);
        if (lengths->parsed()) {
            const auto r = report::length_stats(std::filesystem::path(in));
            if (r.malformed > 0) std::cerr << "skipped " << r.malformed << " malformed line(s)\n";
            write_text(out, report::to_csv(r));
        } else if (scores->parsed()) {
            const auto records = pipeline::load_journal_records(journal);
            write_text(out, report::to_csv(report::score_histogram(records)));
        } else if (diversity->parsed()) {
            const auto file = pipeline::read_dataset(in);
            report::DiversityReport r;
            if (annotations.empty()) {
                r = report::verb_noun_pairs(file.rows, report::RuleBasedAnalyzer{});
            } else {
                r = report::verb_noun_pairs(file.rows, report::AnnotationAnalyzer(annotations));
            }
            std::cerr << "coverage " << r.with_pair << '/' << r.instructions << '\n';
            write_text(out, report::to_csv(r));
        }
        return kExitOk;
    } catch (const pipeline::ProviderExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitProviders;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const pipeline::JournalError& e) {
        std::cerr << "journal error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
