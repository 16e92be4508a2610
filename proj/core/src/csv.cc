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

#include "pqt/csv.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace pqt {

namespace {

void write_comments(std::ostream &out, const std::vector<std::string> &comments) {
    for (const auto &c : comments) {
        out << "# " << c << '\n';
    }
}

// Comma-separated fields; a field wrapped in double quotes may contain commas.
std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    if (quoted) {
        throw std::runtime_error("unterminated quote in: " + line);
    }
    out.push_back(std::move(field));
    return out;
}

std::string quote_if_needed(const std::string &field) {
    return field.find(',') == std::string::npos ? field : '"' + field + '"';
}

double parse_number(const std::string &text) {
    if (text == "nan") {
        return std::nan("");
    }
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) {
        throw std::runtime_error("trailing characters in number '" + text + "'");
    }
    return v;
}

// Reads data lines after the header.
template <typename Fn>
void for_each_record(std::istream &in, const char *header, Fn &&fn) {
    std::string line;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!seen_header) {
            if (line != header) {
                throw std::runtime_error("unexpected CSV header: " + line);
            }
            seen_header = true;
            continue;
        }
        fn(line);
    }
    if (!seen_header) {
        throw std::runtime_error("CSV header missing");
    }
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_sweep_csv(std::ostream &out, const std::vector<std::string> &comments, const std::vector<SweepRow> &rows) {
    write_comments(out, comments);
    out << kSweepHeader << '\n';
    for (const auto &r : rows) {
        out << r.scenario << ',' << quote_if_needed(r.arrangement) << ',' << format_number(r.p_I) << ',' << format_number(r.p_A)
            << ',' << format_number(r.p_B) << ',' << quote_if_needed(r.target) << ',' << format_number(r.theta_star) << ','
            << format_number(r.phi_star) << ',' << format_number(r.fidelity) << ',' << format_number(r.success) << ','
            << format_number(r.concurrence) << ',' << (r.above_classical ? 1 : 0) << ',' << r.status << '\n';
    }
}

void write_outcome_csv(std::ostream &out, const std::vector<std::string> &comments,
                       const std::vector<OutcomeRow> &rows) {
    write_comments(out, comments);
    out << kOutcomeHeader << '\n';
    for (const auto &r : rows) {
        out << r.row;
        for (double q : r.qbar) {
            out << ',' << format_number(q);
        }
        for (double f : r.fbar) {
            out << ',' << format_number(f);
        }
        out << ',' << format_number(r.f_det) << '\n';
    }
}

void write_census_csv(std::ostream &out, const std::vector<std::string> &comments, const CensusTable &table) {
    write_comments(out, comments);
    out << kCensusHeader << '\n';
    for (const auto &c : table.cases) {
        for (const auto &l : c.levels) {
            out << c.scenario << ",\"" << arrangement_code(l.arrangement) << "\"," << format_number(l.arrangement.input.p)
                << ',' << format_number(l.arrangement.alice.p) << ',' << format_number(l.arrangement.bob.p) << ','
                << format_number(l.det_value) << ',' << format_number(l.det_theta) << ','
                << format_number(l.det_phi) << ',' << l.best_outcome << ',' << format_number(l.best_value) << ','
                << format_number(l.best_success) << ',' << format_number(l.best_theta) << ','
                << format_number(l.best_phi) << ',' << format_number(l.gap) << ',' << (l.improved ? 1 : 0) << ','
                << l.status << '\n';
        }
    }
    for (size_t s = 0; s < 3; ++s) {
        out << "# scenario " << s + 1 << " improved " << table.improved_counts[s] << "/16\n";
    }
    out << "# total improved " << table.total_improved() << "/48\n";
}

std::vector<SweepRow> parse_sweep_csv(std::istream &in) {
    std::vector<SweepRow> rows;
    for_each_record(in, kSweepHeader, [&](const std::string &line) {
        auto f = split(line);
        if (f.size() != 13) {
            throw std::runtime_error("expected 13 fields in: " + line);
        }
        SweepRow r;
        r.scenario = std::stoi(f[0]);
        r.arrangement = f[1];
        r.p_I = parse_number(f[2]);
        r.p_A = parse_number(f[3]);
        r.p_B = parse_number(f[4]);
        r.target = f[5];
        r.theta_star = parse_number(f[6]);
        r.phi_star = parse_number(f[7]);
        r.fidelity = parse_number(f[8]);
        r.success = parse_number(f[9]);
        r.concurrence = parse_number(f[10]);
        r.above_classical = f[11] == "1";
        r.status = f[12];
        rows.push_back(std::move(r));
    });
    return rows;
}

std::vector<OutcomeRow> parse_outcome_csv(std::istream &in) {
    std::vector<OutcomeRow> rows;
    for_each_record(in, kOutcomeHeader, [&](const std::string &line) {
        auto f = split(line);
        if (f.size() != 10) {
            throw std::runtime_error("expected 10 fields in: " + line);
        }
        OutcomeRow r;
        r.row = std::stoul(f[0]);
        for (size_t j = 0; j < 4; ++j) {
            r.qbar[j] = parse_number(f[1 + j]);
            r.fbar[j] = parse_number(f[5 + j]);
        }
        r.f_det = parse_number(f[9]);
        rows.push_back(r);
    });
    return rows;
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out << contents;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at " + path.string());
    }
}

}  // namespace pqt
