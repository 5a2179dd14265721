// Copyright 2026 The Discourse Analytics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DISCOURSE_IO_H_
#define DISCOURSE_IO_H_

// Small text helpers shared by the artifact writers and readers: CSV,
// shortest round-trip number formatting, UTC date parsing and file digests.

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "discourse/types.h"

namespace discourse::io {

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

// Accepts integer epoch seconds, "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SSZ".
// Throws std::invalid_argument on anything else.
Timestamp ParseTimestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatUtc(Timestamp ts);

// Midnight UTC on the first day of the month containing `ts`.
Timestamp MonthStart(Timestamp ts);

// `ts` shifted by whole calendar months, keeping the time of day. The day of
// month is clamped to the last day of a shorter target month.
Timestamp AddMonths(Timestamp ts, int months);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void Row(const std::vector<std::string>& fields);
  void Row(std::initializer_list<std::string_view> fields);

 private:
  void Field(std::string_view field, bool first);

  std::ostream& out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by header name; throws DataError when absent.
  std::size_t Column(std::string_view name) const;
};

// RFC 4180 quoting rules; first row is the header.
CsvTable ReadCsv(const std::filesystem::path& path);

// Lowercase hex SHA-256 of the file contents.
std::string Sha256File(const std::filesystem::path& path);

}  // namespace discourse::io

#endif  // DISCOURSE_IO_H_
