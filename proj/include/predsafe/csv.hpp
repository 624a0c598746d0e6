#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "predsafe/sim.hpp"

namespace predsafe::csv {

inline constexpr std::string_view kTrajectoryHeader =
    "t,D,v,v_L,a_L,u_cmd,u_applied,d,d_hat,h,h_delta,Dp,vp,vLp,u_ideal,margin";
inline constexpr std::string_view kSummaryHeader =
    "controller,min_h,min_D,max_abs_u,control_effort,max_abs_d,"
    "max_abs_d_hat,safety_violation_duration,min_h_delta";

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

void write_trajectory(std::ostream& out, const std::vector<sim::StepRecord>& log);
/// Throws ConfigError on header mismatch (naming the offending column) or
/// malformed rows.
std::vector<sim::StepRecord> read_trajectory(std::istream& in);

using SummaryRow = std::pair<std::string, sim::Metrics>;
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary(std::istream& in);

}  // namespace predsafe::csv
