#pragma once

#include <string>
#include <vector>

#include "sqg/diagnostics.hpp"
#include "sqg/ineq.hpp"

namespace sqg {

// Normative trajectory schema; the paired column is blank for unpaired runs.
extern const char* const kTrajectoryHeader;

// One row, %.17g throughout (doubles round-trip exactly).
std::string format_trajectory_row(const DiagnosticsRecord& r);
DiagnosticsRecord parse_trajectory_row(const std::string& line);

void write_trajectory_csv(const std::string& path,
                          const std::vector<DiagnosticsRecord>& recs);
// Appends rows to an existing file; writes the header first when the file is
// missing or empty.
void append_trajectory_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& recs);
std::vector<DiagnosticsRecord> read_trajectory_csv(const std::string& path);

void write_trial_csv(const std::string& path, const std::vector<TrialRow>& rows);

}  // namespace sqg
