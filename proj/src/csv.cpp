#include "predsafe/csv.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "predsafe/errors.hpp"

namespace predsafe::csv {
namespace {

constexpr std::size_t kTrajectoryColumns = 16;

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double Parse(const std::string& text, std::size_t row) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("malformed number '" + text + "' in CSV row " +
                      std::to_string(row));
  }
  return value;
}

void CheckHeader(const std::string& line, std::string_view expected) {
  const auto got = Split(line);
  const auto want = Split(std::string(expected));
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (i >= got.size()) {
      throw ConfigError("CSV header is missing column '" + want[i] + "'");
    }
    if (got[i] != want[i]) {
      throw ConfigError("CSV header column " + std::to_string(i) + " is '" +
                        got[i] + "', expected '" + want[i] + "'");
    }
  }
  if (got.size() != want.size()) {
    throw ConfigError("CSV header has unexpected column '" + got[want.size()] +
                      "'");
  }
}

void StripCr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::string format_double(double value) { return ShortestString(value); }

void write_trajectory(std::ostream& out, const std::vector<sim::StepRecord>& log) {
  out << kTrajectoryHeader << '\n';
  for (const sim::StepRecord& r : log) {
    const std::array<double, kTrajectoryColumns> row{
        r.t,   r.D,     r.v,  r.v_L, r.a_L, r.u_cmd, r.u_applied, r.d,
        r.d_hat, r.h, r.h_delta, r.Dp, r.vp,  r.vLp,   r.u_ideal,   r.margin};
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

std::vector<sim::StepRecord> read_trajectory(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty trajectory CSV");
  StripCr(line);
  CheckHeader(line, kTrajectoryHeader);
  std::vector<sim::StepRecord> log;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    StripCr(line);
    if (line.empty()) continue;
    const auto cells = Split(line);
    if (cells.size() != kTrajectoryColumns) {
      throw ConfigError("CSV row " + std::to_string(row) + " has " +
                        std::to_string(cells.size()) + " columns");
    }
    std::array<double, kTrajectoryColumns> v{};
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Parse(cells[i], row);
    log.push_back(sim::StepRecord{v[0], v[1], v[2],  v[3],  v[4],  v[5],
                                  v[6], v[7], v[8],  v[9],  v[10], v[11],
                                  v[12], v[13], v[14], v[15]});
  }
  return log;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& [name, metrics] : rows) {
    out << name;
    for (const auto& [key, value] : sim::metric_fields(metrics)) {
      out << ',' << format_double(value);
    }
    out << '\n';
  }
}

std::vector<SummaryRow> read_summary(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty summary CSV");
  StripCr(line);
  CheckHeader(line, kSummaryHeader);
  std::vector<SummaryRow> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    StripCr(line);
    if (line.empty()) continue;
    const auto cells = Split(line);
    if (cells.size() != 9) {
      throw ConfigError("summary row " + std::to_string(row) + " malformed");
    }
    sim::Metrics m;
    m.min_h = Parse(cells[1], row);
    m.min_D = Parse(cells[2], row);
    m.max_abs_u = Parse(cells[3], row);
    m.control_effort = Parse(cells[4], row);
    m.max_abs_d = Parse(cells[5], row);
    m.max_abs_d_hat = Parse(cells[6], row);
    m.safety_violation_duration = Parse(cells[7], row);
    m.min_h_delta = Parse(cells[8], row);
    rows.emplace_back(cells[0], m);
  }
  return rows;
}

}  // namespace predsafe::csv
