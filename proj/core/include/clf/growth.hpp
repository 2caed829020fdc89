#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace clf {

/// Annual real GDP per capita; years contiguous and strictly increasing, values > 0.
struct GdpSeries {
    std::vector<int> years;
    std::vector<double> values;

    void validate() const;
    std::size_t size() const noexcept { return years.size(); }
};

/// Growth rates in percent per year, labelled by year. Years are strictly increasing
/// but may have gaps (e.g. after excluding points).
struct GrowthSeries {
    std::vector<int> years;
    std::vector<double> rates;

    void validate() const;
    std::size_t size() const noexcept { return rates.size(); }
};

/// Two-column CSV "year,value"; optional header line, '#' comments and blank lines skipped.
/// Throws ParseError (with line number) on malformed rows, gaps or nonpositive values.
GdpSeries load_gdp_csv(const std::filesystem::path& path);
GdpSeries parse_gdp_csv(std::istream& in);

/// Two-column CSV "year,rate" as written by `clf extract`.
GrowthSeries load_growth_csv(const std::filesystem::path& path);
GrowthSeries parse_growth_csv(std::istream& in);

/// rate_t = 100 (ln v_t - ln v_{t-1}), labelled by year t.
GrowthSeries raw_growth(const GdpSeries& gdp);

enum class ThresholdMode { soft, hard };

/// Maximal-overlap DWT with periodic boundaries.
struct ModwtDecomposition {
    std::vector<std::vector<double>> details;  // details[j-1] = level-j wavelet coefficients
    std::vector<double> smooth;                // level-J scaling coefficients
};

/// Daubechies 4-tap (two vanishing moments) filters.
ModwtDecomposition modwt(const std::vector<double>& x, std::size_t levels);
std::vector<double> inverse_modwt(const ModwtDecomposition& decomposition);

/// Wavelet shrinkage: MODWT with `levels` levels, threshold every detail coefficient at
/// sigma sqrt(2 ln n) with sigma = MAD(level-1 details)/0.6745, then invert.
/// Throws InsufficientData when the series is shorter than 2^levels.
GrowthSeries wavelet_smooth(const GrowthSeries& series, std::size_t levels = 3,
                            ThresholdMode mode = ThresholdMode::soft);

}  // namespace clf
