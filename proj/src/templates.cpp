#include "revgen/templates.hpp"

#include "revgen/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace revgen::promptkit {

std::string_view to_string(TaskKind k) {
    switch (k) {
        case TaskKind::open_instruction: return "open_instruction";
        case TaskKind::qa_with_context: return "qa_with_context";
        case TaskKind::summarization: return "summarization";
        case TaskKind::multiple_choice: return "multiple_choice";
        case TaskKind::math_problem: return "math_problem";
    }
    return "unknown";
}

TaskKind parse_task_kind(std::string_view s) {
    for (auto k : {TaskKind::open_instruction, TaskKind::qa_with_context, TaskKind::summarization,
                   TaskKind::multiple_choice, TaskKind::math_problem}) {
        if (to_string(k) == s) return k;
    }
    throw TemplateError("unknown template kind: " + std::string(s));
}

std::vector<Segment> split_slots(std::string_view body) {
    std::vector<Segment> out;
    std::string literal;
    std::size_t i = 0;
    while (i < body.size()) {
        if (body.compare(i, 2, "{{") == 0) {
            const auto close = body.find("}}", i + 2);
            if (close != std::string_view::npos) {
                const auto name = body.substr(i + 2, close - i - 2);
                if (!name.empty() && name.find('{') == std::string_view::npos) {
                    if (!literal.empty()) out.push_back({false, std::exchange(literal, {})});
                    out.push_back({true, std::string(name)});
                    i = close + 2;
                    continue;
                }
            }
        }
        literal.push_back(body[i]);
        ++i;
    }
    if (!literal.empty()) out.push_back({false, std::move(literal)});
    return out;
}

std::string substitute(std::string_view body, const std::map<std::string, std::string, std::less<>>& values) {
    std::string out;
    out.reserve(body.size());
    for (const auto& seg : split_slots(body)) {
        if (!seg.is_slot) {
            out += seg.text;
            continue;
        }
        auto it = values.find(seg.text);
        if (it == values.end()) throw TemplateError("unresolved template slot {{" + seg.text + "}}");
        out += it->second;
    }
    return out;
}

namespace {

std::vector<std::string> slot_names(std::string_view body) {
    std::vector<std::string> names;
    for (const auto& seg : split_slots(body)) {
        if (seg.is_slot) names.push_back(seg.text);
    }
    return names;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open template file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

YAML::Node template_list(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw TemplateError(std::string("template file is not valid YAML: ") + e.what());
    }
    const YAML::Node list = root["templates"];
    if (!list || !list.IsSequence()) throw TemplateError("template file needs a 'templates' list");
    return list;
}

std::string required_string(const YAML::Node& node, const char* key) {
    const YAML::Node v = node[key];
    if (!v || !v.IsScalar()) throw TemplateError(std::string("template is missing '") + key + "'");
    return v.as<std::string>();
}

}  // namespace

void TaskTemplate::validate() const {
    const std::string where = "template '" + id + "': ";
    if (id.empty()) throw TemplateError("template id must be non-empty");
    const auto body_slots = slot_names(body);
    if (body_slots.size() != 1 || body_slots.front() != "response") {
        throw TemplateError(where + "body must contain exactly one {{response}} slot");
    }
    if (output_labels.empty()) throw TemplateError(where + "output_labels must be non-empty");
    std::set<std::string> labels;
    for (const auto& l : output_labels) {
        if (l.empty()) throw TemplateError(where + "empty output label");
        if (!labels.insert(l).second) throw TemplateError(where + "duplicate output label '" + l + "'");
    }
    const auto refs = slot_names(assembly);
    if (refs.empty()) throw TemplateError(where + "assembly must reference at least one label");
    for (const auto& r : refs) {
        if (!labels.contains(r)) throw TemplateError(where + "assembly references undeclared label '" + r + "'");
    }
    if (kind == TaskKind::multiple_choice) {
        for (const char* l : {"A.", "B.", "C.", "D.", "Answer:"}) {
            if (!labels.contains(l)) throw TemplateError(where + "multiple_choice needs label '" + l + "'");
        }
    }
    if (!(weight > 0.0)) throw TemplateError(where + "weight must be > 0");
}

void ScoringTemplate::validate() const {
    auto names = slot_names(body);
    std::sort(names.begin(), names.end());
    if (names != std::vector<std::string>{"instruction", "response"}) {
        throw TemplateError("scoring template must contain exactly one {{instruction}} and one {{response}} slot");
    }
    if (score_label.empty()) throw TemplateError("scoring template needs a score label");
}

std::vector<TaskTemplate> parse_task_pool(std::string_view yaml_text) {
    std::vector<TaskTemplate> pool;
    std::set<std::string> ids;
    try {
        for (const auto& node : template_list(yaml_text)) {
            TaskTemplate t;
            t.id = required_string(node, "id");
            t.kind = parse_task_kind(required_string(node, "kind"));
            t.body = required_string(node, "body");
            t.assembly = required_string(node, "assembly");
            const YAML::Node labels = node["output_labels"];
            if (!labels || !labels.IsSequence()) throw TemplateError("template '" + t.id + "' needs output_labels");
            for (const auto& l : labels) t.output_labels.push_back(l.as<std::string>());
            if (node["weight"]) t.weight = node["weight"].as<double>();
            t.validate();
            if (!ids.insert(t.id).second) throw TemplateError("duplicate template id '" + t.id + "'");
            pool.push_back(std::move(t));
        }
    } catch (const YAML::Exception& e) {
        throw TemplateError(std::string("malformed template file: ") + e.what());
    }
    if (pool.empty()) throw TemplateError("template pool is empty");
    return pool;
}

std::vector<TaskTemplate> load_task_pool(const std::filesystem::path& path) {
    return parse_task_pool(read_file(path));
}

ScoringTemplate parse_scoring_template(std::string_view yaml_text) {
    const YAML::Node list = template_list(yaml_text);
    if (list.size() != 1) throw TemplateError("scoring template file must hold exactly one template");
    try {
        const YAML::Node node = list[0];
        ScoringTemplate t;
        t.id = required_string(node, "id");
        if (node["kind"] && node["kind"].as<std::string>() != "scoring") {
            throw TemplateError("scoring template must have kind 'scoring'");
        }
        t.body = required_string(node, "body");
        if (const YAML::Node labels = node["output_labels"]) {
            if (!labels.IsSequence() || labels.size() != 1) {
                throw TemplateError("scoring template declares exactly one output label");
            }
            t.score_label = labels[0].as<std::string>();
        }
        t.validate();
        return t;
    } catch (const YAML::Exception& e) {
        throw TemplateError(std::string("malformed scoring template: ") + e.what());
    }
}

ScoringTemplate load_scoring_template(const std::filesystem::path& path) {
    return parse_scoring_template(read_file(path));
}

std::vector<TaskTemplate> default_task_pool() { return parse_task_pool(default_task_pool_yaml()); }

ScoringTemplate default_scoring_template() { return parse_scoring_template(default_scoring_yaml()); }

}  // namespace revgen::promptkit
