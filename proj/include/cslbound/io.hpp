#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cslbound/spectrum.hpp"
#include "cslbound/stats.hpp"

namespace cslbound {

/// Writes `content` to a temporary file beside `path` and renames it into
/// place, so readers never observe a partial file. Creates parent directories.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

/// Shortest text that reads back to the same double ("%.17g" fallback).
std::string format_double(double v);

/// Numeric CSV whose first line must equal `header` (whitespace-insensitive).
/// Blank lines and further '#' lines are skipped. Every row must have exactly
/// the header's column count of finite numbers; errors name the line.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path, std::string_view header);

/// Header line followed by rows formatted with format_double.
std::string format_csv(std::string_view header, const std::vector<std::vector<double>>& rows);

inline constexpr std::string_view kSpectrumHeader = "# freq_hz,psd_m2_per_hz";
inline constexpr std::string_view kTemperatureHeader = "# T_K,Tm_K,sigma_K";
inline constexpr std::string_view kCurveHeader = "# r_C_m,lambda_up_per_s";

SpectrumRecord load_spectrum_csv(const std::filesystem::path& path, int n_averages, double scale = 1.0);
std::string format_spectrum_csv(const SpectrumRecord& spec);

/// Throws InsufficientDataError for a file without rows and DataError (with
/// the line number) for non-positive sigma.
TemperatureSeries load_temperature_csv(const std::filesystem::path& path, double cut_low = 0.025);
std::string format_temperature_csv(const TemperatureSeries& series);

}  // namespace cslbound
