#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace revgen::promptkit {

enum class TaskKind { open_instruction, qa_with_context, summarization, multiple_choice, math_problem };

std::string_view to_string(TaskKind k);
TaskKind parse_task_kind(std::string_view s);

/// One instruction-generation prompt plus the rules for reading its completion.
struct TaskTemplate {
    std::string id;
    TaskKind kind = TaskKind::open_instruction;
    std::string body;                        // exactly one {{response}} slot
    std::vector<std::string> output_labels;  // in completion order
    std::string assembly;                    // {{<label>}} slots over output_labels
    double weight = 1.0;

    /// Throws TemplateError when an invariant does not hold.
    void validate() const;
};

/// The judge prompt with {{instruction}} and {{response}} slots.
struct ScoringTemplate {
    std::string id;
    std::string body;
    std::string score_label = "Score:";

    void validate() const;
};

/// A piece of a template body: literal text or a {{name}} slot.
struct Segment {
    bool is_slot = false;
    std::string text;  // literal text, or the slot name
};

/// Splits `body` at {{name}} slots. An unterminated "{{" is literal text.
std::vector<Segment> split_slots(std::string_view body);

/// Replaces every slot in one pass; substituted values are never rescanned.
/// Throws TemplateError for a slot without a value.
std::string substitute(std::string_view body, const std::map<std::string, std::string, std::less<>>& values);

std::vector<TaskTemplate> parse_task_pool(std::string_view yaml_text);
std::vector<TaskTemplate> load_task_pool(const std::filesystem::path& path);
ScoringTemplate parse_scoring_template(std::string_view yaml_text);
ScoringTemplate load_scoring_template(const std::filesystem::path& path);

/// The shipped defaults (templates/task_prompts.yaml, templates/scoring_prompt.yaml).
std::string_view default_task_pool_yaml();
std::string_view default_scoring_yaml();
std::vector<TaskTemplate> default_task_pool();
ScoringTemplate default_scoring_template();

}  // namespace revgen::promptkit
