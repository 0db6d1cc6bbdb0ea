// Copyright 2026 The Squash Authors
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

#include "squash/cli/csv.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace squash::cli {

namespace {

std::string trim(const std::string& s) {
    const size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& field, double& out) {
    const std::string t = trim(field);
    if (t.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size();
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
        fields.push_back(f);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

}  // namespace

ParseError::ParseError(const std::string& path, int line, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

std::string format_number(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::vector<TallyRow> parse_tally_csv(std::istream& in, const std::string& source) {
    std::vector<TallyRow> rows;
    std::string line;
    int number = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        const auto fields = split(t);
        double scratch;
        if (!seen_content && fields.size() >= 2 && !parse_double(fields[1], scratch)) {
            seen_content = true;
            continue;
        }
        seen_content = true;
        if (fields.size() != 4) {
            throw ParseError(source, number, "expected 4 fields, found " + std::to_string(fields.size()));
        }
        TallyRow row;
        row.line = number;
        row.label = trim(fields[0]);
        if (row.label.empty()) {
            throw ParseError(source, number, "empty label");
        }
        double* slots[3] = {&row.a, &row.b, &row.c};
        for (int i = 0; i < 3; ++i) {
            if (!parse_double(fields[i + 1], *slots[i]) || !std::isfinite(*slots[i]) || *slots[i] < 0) {
                throw ParseError(source, number, "field " + std::to_string(i + 2) + " is not a nonnegative count");
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<TallyRow> read_tally_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    return parse_tally_csv(in, path);
}

CsvWriter::CsvWriter(const std::string& path, std::ostream& fallback) : path_(path), out_(&fallback) {
    if (path != "-") {
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) {
            throw IoError("cannot write " + path);
        }
        out_ = file_.get();
    }
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            *out_ << ',';
        }
        *out_ << fields[i];
    }
    *out_ << '\n';
}

void CsvWriter::close() {
    out_->flush();
    if (file_) {
        file_->close();
        if (!*file_) {
            throw IoError("failed writing " + path_);
        }
    }
}

}  // namespace squash::cli
