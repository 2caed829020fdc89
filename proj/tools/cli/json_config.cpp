#include "json_config.hpp"

#include <istream>

#include <nlohmann/json.hpp>

namespace clf::cli {
namespace {

std::string scalar_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

void collect(const nlohmann::json& node, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : node.items()) {
        if (value.is_object()) {
            auto nested = parents;
            nested.push_back(key);
            collect(value, nested, out);
            continue;
        }
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        if (value.is_array()) {
            for (const auto& v : value) item.inputs.push_back(scalar_text(v));
        } else {
            item.inputs.push_back(scalar_text(value));
        }
        out.push_back(std::move(item));
    }
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
    nlohmann::json j;
    for (const CLI::Option* opt : app->get_options({})) {
        if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
        const std::string name = opt->get_lnames().front();
        if (opt->count() > 0) {
            const auto& results = opt->results();
            j[name] = results.size() == 1 ? nlohmann::json(results.front()) : nlohmann::json(results);
        } else if (default_also && !opt->get_default_str().empty()) {
            j[name] = opt->get_default_str();
        }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
        const auto nested = nlohmann::json::parse(to_config(sub, default_also, false, ""));
        if (!nested.empty()) j[sub->get_name()] = nested;
    }
    return j.dump(2);
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    nlohmann::json j;
    try {
        input >> j;
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
}

}  // namespace clf::cli
