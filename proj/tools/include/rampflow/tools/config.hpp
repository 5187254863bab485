#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rampflow/scheme.hpp"

namespace rampflow::tools {

/// Validated run description: one problem, one kernel, any number of model variants.
struct RunConfig {
    std::string name;
    ModelConfig base;                   // variant field is the first entry of `models`
    std::vector<ModelVariant> models;
    std::vector<double> convergence_etas;  // optional, used by the convergence study
    double kappa_step = 0.05;
    std::filesystem::path output_dir;
    bool plot_script = true;
    std::string notes;
    nlohmann::json source;  // normalized input tree, echoed into summaries

    ModelConfig config_for(ModelVariant v) const;
};

/// Every problem found while reading a config, each prefixed with its field path.
class ConfigValidationError : public std::invalid_argument {
public:
    explicit ConfigValidationError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

RunConfig parse_config(const nlohmann::json& tree);
/// Reads a JSON file. Parse failures and missing files raise ConfigValidationError.
RunConfig load_config(const std::filesystem::path& path);
/// Preset name or file path.
RunConfig resolve_config(std::string_view name_or_path);
/// Raw tree of a preset or a file, before validation.
nlohmann::json resolve_config_tree(std::string_view name_or_path);

std::vector<std::string> preset_names();
/// Throws std::out_of_range for unknown names.
nlohmann::json preset_tree(std::string_view name);

}  // namespace rampflow::tools
