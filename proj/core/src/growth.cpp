#include "clf/growth.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "clf/error.hpp"

namespace clf {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_year(std::string_view s, int& out) {
    double v = 0.0;
    if (!parse_double(s, v) || v != std::floor(v) || std::abs(v) > 1e6) return false;
    out = static_cast<int>(v);
    return true;
}

struct Row {
    std::size_t line;
    int year;
    double value;
};

// Reads "year,value" rows. The first data-bearing line may be a header.
std::vector<Row> read_rows(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    std::size_t number = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++number;
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto comma = s.find(',');
        Row row{number, 0, 0.0};
        const bool ok = comma != std::string_view::npos && parse_year(s.substr(0, comma), row.year) &&
                        parse_double(s.substr(comma + 1), row.value);
        if (!ok) {
            const bool looks_like_header =
                first && std::any_of(s.begin(), s.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
            if (looks_like_header) {
                first = false;
                continue;
            }
            throw ParseError("expected two numeric columns 'year,value', got '" + std::string(s) + "'", number);
        }
        first = false;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

void GdpSeries::validate() const {
    if (years.size() != values.size()) throw InvalidArgument("GDP series: years and values differ in length");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) throw InvalidArgument("GDP series: values must be positive");
        if (i > 0 && years[i] != years[i - 1] + 1) throw InvalidArgument("GDP series: non-contiguous years");
    }
}

void GrowthSeries::validate() const {
    if (years.size() != rates.size()) throw InvalidArgument("growth series: years and rates differ in length");
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (!std::isfinite(rates[i])) throw InvalidArgument("growth series: rates must be finite");
        if (i > 0 && years[i] <= years[i - 1]) throw InvalidArgument("growth series: years must increase");
    }
}

GdpSeries parse_gdp_csv(std::istream& in) {
    const auto rows = read_rows(in);
    if (rows.empty()) throw InsufficientData("GDP file contains no data rows");
    GdpSeries out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (!(r.value > 0.0)) throw ParseError("nonpositive GDP value", r.line);
        if (i > 0 && r.year != rows[i - 1].year + 1)
            throw ParseError("non-contiguous years: " + std::to_string(rows[i - 1].year) + " followed by " +
                                 std::to_string(r.year),
                             r.line);
        out.years.push_back(r.year);
        out.values.push_back(r.value);
    }
    return out;
}

GdpSeries load_gdp_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    return parse_gdp_csv(in);
}

GrowthSeries parse_growth_csv(std::istream& in) {
    const auto rows = read_rows(in);
    if (rows.empty()) throw InsufficientData("growth file contains no data rows");
    GrowthSeries out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].year <= rows[i - 1].year) throw ParseError("years must increase", rows[i].line);
        out.years.push_back(rows[i].year);
        out.rates.push_back(rows[i].value);
    }
    return out;
}

GrowthSeries load_growth_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    return parse_growth_csv(in);
}

GrowthSeries raw_growth(const GdpSeries& gdp) {
    gdp.validate();
    if (gdp.size() < 2) throw InsufficientData("raw_growth needs at least 2 GDP points");
    GrowthSeries out;
    out.years.reserve(gdp.size() - 1);
    out.rates.reserve(gdp.size() - 1);
    for (std::size_t t = 1; t < gdp.size(); ++t) {
        out.years.push_back(gdp.years[t]);
        out.rates.push_back(100.0 * (std::log(gdp.values[t]) - std::log(gdp.values[t - 1])));
    }
    return out;
}

}  // namespace clf
