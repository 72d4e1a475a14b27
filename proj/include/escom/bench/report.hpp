#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "escom/bench/experiment.hpp"
#include "escom/solvers.hpp"

namespace escom::bench {

inline constexpr const char* kAggregateHeader =
    "method,param_name,param_value,mean_iterations,mean_time_s,samples,"
    "flagged_runs";
inline constexpr const char* kTraceHeader =
    "n,norm_x,step_norm,sigma,beta_n,phi_n";

/// Reals use the shortest round-trip form; mean_time_s is fixed at 4
/// decimals.
void write_csv(const std::vector<AggregateRow>& rows, std::ostream& out);
void write_csv(const std::vector<AggregateRow>& rows, const std::string& path);

std::vector<AggregateRow> read_csv(std::istream& in);
std::vector<AggregateRow> read_csv(const std::string& path);

/// Line chart of mean_iterations against param_value, one polyline per
/// method. Every vertex is also a <circle> carrying data-method, data-x and
/// data-y attributes with the exact values.
void write_svg_lines(const std::vector<AggregateRow>& rows, std::ostream& out,
                     const std::string& title = "");
void write_svg_lines(const std::vector<AggregateRow>& rows,
                     const std::string& path, const std::string& title = "");

void write_trace_csv(const RunRecord& record, std::ostream& out);
void write_trace_csv(const RunRecord& record, const std::string& path);

/// Shortest decimal string that parses back to the same double.
std::string format_real(double v);

}  // namespace escom::bench
