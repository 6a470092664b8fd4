#include "revgen/dataset.hpp"

#include "revgen/errors.hpp"

#include "json.hpp"

#include <fstream>

namespace revgen::pipeline {

using nlohmann::ordered_json;

std::string to_json_line(const DatasetRow& row) {
    const auto& p = row.provenance;
    ordered_json prov = {
        {"record_id", p.record_id},
        {"template_id", p.template_id},
        {"judge_score", p.judge_score},
        {"forward_qe", p.forward_qe},
        {"backward_qe", p.backward_qe},
        {"model_ids", {{"llm", p.model_ids.llm}, {"mt", p.model_ids.mt}, {"qe", p.model_ids.qe}}},
        {"seed", p.seed},
        {"instruction_en", p.instruction_en},
    };
    if (p.answer_letter) prov["answer_letter"] = *p.answer_letter;
    prov["judge_temperature"] = p.judge_temperature;
    prov["backward_qe_convention"] = kBackwardQeConvention;
    ordered_json j = {{"instruction", row.instruction},
                      {"response", row.response},
                      {"language", row.language},
                      {"provenance", std::move(prov)}};
    return j.dump();
}

DatasetRow row_from_json_line(std::string_view line) {
    const auto j = ordered_json::parse(line);
    DatasetRow row;
    row.instruction = j.at("instruction").get<std::string>();
    row.response = j.at("response").get<std::string>();
    row.language = j.at("language").get<std::string>();
    const auto& p = j.at("provenance");
    auto& out = row.provenance;
    out.record_id = p.at("record_id").get<std::string>();
    out.template_id = p.at("template_id").get<std::string>();
    out.judge_score = p.at("judge_score").get<int>();
    out.forward_qe = p.at("forward_qe").get<double>();
    out.backward_qe = p.at("backward_qe").get<double>();
    const auto& m = p.at("model_ids");
    out.model_ids = {m.at("llm").get<std::string>(), m.at("mt").get<std::string>(), m.at("qe").get<std::string>()};
    out.seed = p.at("seed").get<std::uint64_t>();
    out.instruction_en = p.value("instruction_en", std::string{});
    if (p.contains("answer_letter")) out.answer_letter = p.at("answer_letter").get<std::string>();
    out.judge_temperature = p.value("judge_temperature", 0.0);
    return row;
}

int judge_score_of(std::string_view line) {
    return ordered_json::parse(line).at("provenance").at("judge_score").get<int>();
}

void write_lines_atomically(const std::filesystem::path& path, const std::vector<std::string>& lines) {
    auto tmp = path;
    tmp += ".partial";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write " + tmp.string());
            for (const auto& l : lines) out << l << '\n';
            out.flush();
            if (!out) throw std::runtime_error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw;
    }
}

DatasetFile read_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open dataset " + path.string());
    DatasetFile f;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            f.rows.push_back(row_from_json_line(line));
            f.lines.push_back(line);
        } catch (const nlohmann::json::exception&) {
            ++f.malformed;
        }
    }
    return f;
}

std::vector<std::string> filter_lines_by_lambda(const std::vector<std::string>& lines, int lambda) {
    if (lambda < 1 || lambda > 5) throw PreconditionError("lambda must lie in 1..5");
    std::vector<std::string> out;
    for (const auto& l : lines) {
        if (judge_score_of(l) >= lambda) out.push_back(l);
    }
    return out;
}

}  // namespace revgen::pipeline
