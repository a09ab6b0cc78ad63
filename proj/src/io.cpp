#include "cslbound/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw DataError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw DataError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw DataError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  return std::string(buf, ptr);
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path, std::string_view header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  const std::string want = strip_spaces(header);
  const std::size_t columns = static_cast<std::size_t>(std::count(want.begin(), want.end(), ',')) + 1;

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string compact = strip_spaces(line);
    if (compact.empty()) continue;
    if (!have_header) {
      if (compact != want)
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected header '" + std::string(header) +
                        "'");
      have_header = true;
      continue;
    }
    if (compact.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= compact.size()) {
      const std::size_t end = std::min(compact.find(',', start), compact.size());
      double v = 0.0;
      const char* b = compact.data() + start;
      const char* e = compact.data() + end;
      const auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec != std::errc() || ptr != e || !std::isfinite(v))
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": field " + std::to_string(row.size() + 1) +
                        " is not a finite number");
      row.push_back(v);
      start = end + 1;
    }
    if (row.size() != columns)
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                      " columns, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw InsufficientDataError(path.string() + ": file is empty");
  return rows;
}

std::string format_csv(std::string_view header, const std::vector<std::vector<double>>& rows) {
  std::string out(header);
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

SpectrumRecord load_spectrum_csv(const std::filesystem::path& path, int n_averages, double scale) {
  const auto rows = read_numeric_csv(path, kSpectrumHeader);
  if (rows.empty()) throw InsufficientDataError(path.string() + ": no spectrum rows");
  if (!(scale > 0.0)) throw DomainError("calibration scale must be positive");
  SpectrumRecord spec;
  spec.freqs.resize(static_cast<Eigen::Index>(rows.size()));
  spec.psd.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    spec.freqs[static_cast<Eigen::Index>(i)] = rows[i][0];
    spec.psd[static_cast<Eigen::Index>(i)] = rows[i][1] * scale;
  }
  spec.n_averages = n_averages;
  spec.validate();
  return spec;
}

std::string format_spectrum_csv(const SpectrumRecord& spec) {
  std::vector<std::vector<double>> rows;
  for (Eigen::Index i = 0; i < spec.freqs.size(); ++i) rows.push_back({spec.freqs[i], spec.psd[i]});
  return format_csv(kSpectrumHeader, rows);
}

TemperatureSeries load_temperature_csv(const std::filesystem::path& path, double cut_low) {
  std::ifstream probe(path);
  if (!probe) throw DataError("cannot open " + path.string());
  const auto rows = read_numeric_csv(path, kTemperatureHeader);
  if (rows.empty()) throw InsufficientDataError(path.string() + ": no data rows");
  // Re-scan for line numbers of rejected rows.
  TemperatureSeries series;
  series.cut_low = cut_low;
  std::string line;
  int line_no = 0;
  std::size_t row = 0;
  bool header_seen = false;
  while (std::getline(probe, line) && row < rows.size()) {
    ++line_no;
    const std::string compact = strip_spaces(line);
    if (compact.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    if (compact.front() == '#') continue;
    const auto& r = rows[row++];
    if (!(r[2] > 0.0))
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": sigma must be positive");
    if (r[0] < 0.0)
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": negative bath temperature");
    series.points.push_back({r[0], r[1], r[2]});
  }
  return series;
}

std::string format_temperature_csv(const TemperatureSeries& series) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : series.points) rows.push_back({p.T_bath, p.T_m, p.sigma});
  return format_csv(kTemperatureHeader, rows);
}

}  // namespace cslbound
