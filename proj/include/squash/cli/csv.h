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

#ifndef SQUASH_CLI_CSV_H
#define SQUASH_CLI_CSV_H

#include <fstream>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace squash::cli {

/// Raised for unreadable or unwritable files; maps to exit status 2.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed input rows; the message names the line.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string& path, int line, const std::string& what);
    int line() const { return line_; }

   private:
    int line_;
};

/// Twelve significant digits, '%.12g'.
std::string format_number(double x);

/// One tally row: label followed by three nonnegative counts.
struct TallyRow {
    int line = 0;
    std::string label;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Reads `label,count,count,count` rows. A first line whose second field is
/// not numeric is taken as the header. Blank lines and '#' lines are skipped.
std::vector<TallyRow> read_tally_csv(const std::string& path);
std::vector<TallyRow> parse_tally_csv(std::istream& in, const std::string& source);

/// Writes to a file, or to the given fallback stream when path is "-".
class CsvWriter {
   public:
    CsvWriter(const std::string& path, std::ostream& fallback);
    void row(const std::vector<std::string>& fields);
    std::ostream& stream() { return *out_; }
    void close();

   private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
};

}  // namespace squash::cli

#endif
