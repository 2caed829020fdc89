#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace clf::cli {

enum class TableFormat { csv, json };

struct Column {
    std::string name;
    std::vector<double> values;
    bool integer = false;
};

/// Shortest round-trip decimal form, so outputs are byte-stable.
std::string format_number(double v);

/// Writes `stem`.csv (header row + one line per row) or `stem`.json (object of column arrays)
/// into `dir`. Returns the path written.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const std::vector<Column>& columns, TableFormat format);

std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& name,
                                 const nlohmann::json& value);

/// Writes a gnuplot script next to the data it plots.
std::filesystem::path write_gnuplot(const std::filesystem::path& dir, const std::string& name,
                                    const std::string& body);

}  // namespace clf::cli
