#include "revgen/report.hpp"

#include "revgen/errors.hpp"
#include "revgen/unicode.hpp"

#include <cmath>
#include <cstdio>

namespace revgen::report {

std::string_view to_string(Role r) { return r == Role::instruction ? "instruction" : "response"; }

void RunningStats::add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
}

double RunningStats::stddev() const {
    if (n_ == 0) return 0.0;
    return std::sqrt(std::max(0.0, m2_ / static_cast<double>(n_)));
}

LengthReport length_stats(std::span<const pipeline::DatasetRow> rows, std::size_t malformed) {
    RunningStats ins, res;
    for (const auto& r : rows) {
        ins.add(static_cast<double>(text::char_count(r.instruction)));
        res.add(static_cast<double>(text::char_count(r.response)));
    }
    LengthReport out;
    out.instruction = {Role::instruction, ins.mean(), ins.stddev(), ins.count()};
    out.response = {Role::response, res.mean(), res.stddev(), res.count()};
    out.malformed = malformed;
    return out;
}

LengthReport length_stats(const std::filesystem::path& dataset) {
    const auto file = pipeline::read_dataset(dataset);
    return length_stats(file.rows, file.malformed);
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string to_csv(const LengthReport& r) {
    std::string out = "role,count,mean_chars,stddev_chars\n";
    for (const auto* s : {&r.instruction, &r.response}) {
        out += std::string(to_string(s->role)) + ',' + std::to_string(s->count) + ',' + fmt(s->mean_chars) + ',' +
               fmt(s->stddev_chars) + '\n';
    }
    return out;
}

std::size_t ScoreHistogram::total() const {
    std::size_t n = unparseable;
    for (auto c : by_score) n += c;
    return n;
}

ScoreHistogram score_histogram(std::span<const pipeline::CandidatePair> records) {
    ScoreHistogram h;
    for (const auto& p : records) {
        if (p.verdict) {
            const int s = p.verdict->score;
            if (s >= 1 && s <= 5) ++h.by_score[static_cast<std::size_t>(s - 1)];
        } else if (p.reject_reason == pipeline::RejectReason::judge_unparseable) {
            ++h.unparseable;
        }
    }
    return h;
}

std::string to_csv(const ScoreHistogram& h) {
    std::string out = "score,count\n";
    for (int s = 1; s <= 5; ++s) out += std::to_string(s) + ',' + std::to_string(h.by_score[s - 1]) + '\n';
    out += "unparseable," + std::to_string(h.unparseable) + '\n';
    return out;
}

std::vector<SweepPoint> sweep(const std::vector<std::string>& lines, std::span<const int> lambdas) {
    std::vector<SweepPoint> out;
    for (int l : lambdas) {
        if (l < 1 || l > 5) throw ConfigError("lambda must be in 1..5, got " + std::to_string(l));
        out.push_back({l, pipeline::filter_lines_by_lambda(lines, l)});
    }
    return out;
}

std::string to_csv(std::span<const SweepPoint> points) {
    std::string out = "lambda,size\n";
    for (const auto& p : points) out += std::to_string(p.lambda) + ',' + std::to_string(p.lines.size()) + '\n';
    return out;
}

}  // namespace revgen::report
