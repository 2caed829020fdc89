#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "clf/error.hpp"

namespace clf::cli {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    return out;
}

}  // namespace

std::string format_number(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const std::vector<Column>& columns, TableFormat format) {
    const std::size_t rows = columns.empty() ? 0 : columns.front().values.size();
    for (const auto& c : columns)
        if (c.values.size() != rows) throw InvalidArgument("table columns differ in length");

    auto cell = [](const Column& c, std::size_t i) {
        return c.integer ? std::to_string(static_cast<long long>(std::llround(c.values[i]))) : format_number(c.values[i]);
    };

    if (format == TableFormat::json) {
        const auto path = dir / (stem + ".json");
        auto out = open_for_write(path);
        out << "{";
        for (std::size_t k = 0; k < columns.size(); ++k) {
            out << (k ? ",\n " : "\n ") << nlohmann::json(columns[k].name).dump() << ": [";
            for (std::size_t i = 0; i < rows; ++i) {
                const double v = columns[k].values[i];
                out << (i ? "," : "") << (std::isfinite(v) ? cell(columns[k], i) : "null");
            }
            out << "]";
        }
        out << "\n}\n";
        return path;
    }

    const auto path = dir / (stem + ".csv");
    auto out = open_for_write(path);
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k].name;
    out << "\n";
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << cell(columns[k], i);
        out << "\n";
    }
    return path;
}

std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& name,
                                 const nlohmann::json& value) {
    const auto path = dir / name;
    auto out = open_for_write(path);
    out << value.dump(2) << "\n";
    return path;
}

std::filesystem::path write_gnuplot(const std::filesystem::path& dir, const std::string& name,
                                    const std::string& body) {
    const auto path = dir / name;
    auto out = open_for_write(path);
    out << "set datafile separator ','\nset key autotitle columnhead\n" << body;
    return path;
}

}  // namespace clf::cli
