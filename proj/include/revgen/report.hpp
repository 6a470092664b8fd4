#pragma once

#include "revgen/dataset.hpp"
#include "revgen/pipeline.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace revgen::report {

enum class Role { instruction, response };

std::string_view to_string(Role r);

struct LengthStats {
    Role role = Role::instruction;
    double mean_chars = 0.0;
    double stddev_chars = 0.0;  // population
    std::size_t count = 0;
};

/// Streaming mean / population stddev over character counts.
class RunningStats {
public:
    void add(double x);
    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    double stddev() const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct LengthReport {
    LengthStats instruction;
    LengthStats response;
    std::size_t malformed = 0;
};

LengthReport length_stats(std::span<const pipeline::DatasetRow> rows, std::size_t malformed = 0);
LengthReport length_stats(const std::filesystem::path& dataset);

/// role,count,mean_chars,stddev_chars
std::string to_csv(const LengthReport& r);

struct ScoreHistogram {
    std::array<std::size_t, 5> by_score{};  // index = score - 1
    std::size_t unparseable = 0;

    std::size_t total() const;
};

/// Counts records that reached the judge: those holding a verdict, plus
/// those rejected as judge_unparseable. Other records are ignored.
ScoreHistogram score_histogram(std::span<const pipeline::CandidatePair> records);

/// score,count with rows 1..5 then "unparseable".
std::string to_csv(const ScoreHistogram& h);

struct SweepPoint {
    int lambda = 0;
    std::vector<std::string> lines;
};

/// Dataset variants for each lambda, filtered from emitted dataset lines.
/// Lambdas are validated (1..5) and reported in the order given.
std::vector<SweepPoint> sweep(const std::vector<std::string>& lines, std::span<const int> lambdas);

/// lambda,size
std::string to_csv(std::span<const SweepPoint> points);

}  // namespace revgen::report
