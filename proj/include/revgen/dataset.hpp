#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revgen::pipeline {

struct ModelIds {
    std::string llm;
    std::string mt;
    std::string qe;

    friend bool operator==(const ModelIds&, const ModelIds&) = default;
};

struct Provenance {
    std::string record_id;
    std::string template_id;
    int judge_score = 0;
    double forward_qe = 0.0;
    double backward_qe = 0.0;
    ModelIds model_ids;
    std::uint64_t seed = 0;
    std::string instruction_en;
    std::optional<std::string> answer_letter;  // multiple_choice only
    double judge_temperature = 0.0;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// One emitted training pair (I_x, R_x).
struct DatasetRow {
    std::string instruction;
    std::string response;
    std::string language;
    Provenance provenance;

    friend bool operator==(const DatasetRow&, const DatasetRow&) = default;
};

/// Convention recorded in provenance for the backward quality estimate.
inline constexpr std::string_view kBackwardQeConvention = "source=instruction_en;hypothesis=instruction_x";

std::string to_json_line(const DatasetRow& row);
DatasetRow row_from_json_line(std::string_view line);

/// Judge score of a serialized row, without materializing the row.
int judge_score_of(std::string_view line);

/// Writes the lines to a temporary sibling and renames it into place; on
/// failure the temporary is removed and the error rethrown.
void write_lines_atomically(const std::filesystem::path& path, const std::vector<std::string>& lines);

struct DatasetFile {
    std::vector<std::string> lines;  // well-formed lines, verbatim
    std::vector<DatasetRow> rows;
    std::size_t malformed = 0;
};

DatasetFile read_dataset(const std::filesystem::path& path);

/// Lines of `lines` whose judge score is >= lambda, in input order.
std::vector<std::string> filter_lines_by_lambda(const std::vector<std::string>& lines, int lambda);

}  // namespace revgen::pipeline
