#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace clf::cli {

/// CLI11 config reader for JSON files. Top-level keys set global options; an object under a
/// subcommand name sets that subcommand's options, e.g. {"seed": 3, "fit": {"boot": 50}}.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace clf::cli
