// Copyright 2026 The pqtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQT_CSV_H
#define PQT_CSV_H

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pqt/scenario.h"

namespace pqt {

inline constexpr const char *kSweepHeader =
    "scenario,arrangement,p_I,p_A,p_B,target,theta_star,phi_star,fidelity,success,concurrence,above_classical,status";
inline constexpr const char *kOutcomeHeader = "row,qbar1,qbar2,qbar3,qbar4,fbar1,fbar2,fbar3,fbar4,f_det";
inline constexpr const char *kCensusHeader =
    "scenario,arrangement,p_I,p_A,p_B,det_fidelity,det_theta,det_phi,best_outcome,best_fidelity,best_success,"
    "best_theta,best_phi,gap,improved,status";

/// %.12g; NaN prints as "nan".
std::string format_number(double x);

/// Comment lines are written first, each prefixed with "# ".
void write_sweep_csv(std::ostream &out, const std::vector<std::string> &comments, const std::vector<SweepRow> &rows);
void write_outcome_csv(std::ostream &out, const std::vector<std::string> &comments,
                       const std::vector<OutcomeRow> &rows);
void write_census_csv(std::ostream &out, const std::vector<std::string> &comments, const CensusTable &table);

/// Skips '#' lines; throws std::runtime_error on a header or field mismatch.
std::vector<SweepRow> parse_sweep_csv(std::istream &in);
std::vector<OutcomeRow> parse_outcome_csv(std::istream &in);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
/// Throws std::runtime_error on any I/O failure.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);

}  // namespace pqt

#endif
