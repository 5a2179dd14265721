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

#include "discourse/io.h"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace discourse::io {

namespace {

using std::chrono::days;
using std::chrono::sys_days;
using std::chrono::year_month_day;

bool ParseInt(std::string_view text, long long& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

Timestamp ToTimestamp(const year_month_day& ymd) {
  return static_cast<Timestamp>(sys_days(ymd).time_since_epoch().count()) *
         kSecondsPerDay;
}

year_month_day ToDate(Timestamp ts) {
  Timestamp day = ts >= 0 ? ts / kSecondsPerDay
                          : -((-ts + kSecondsPerDay - 1) / kSecondsPerDay);
  return year_month_day{sys_days{days{day}}};
}

}  // namespace

std::string FormatDouble(double value) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("FormatDouble overflow");
  return std::string(buf.data(), ptr);
}

Timestamp ParseTimestamp(std::string_view text) {
  long long epoch = 0;
  if (ParseInt(text, epoch)) return epoch;

  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
  std::string owned(text);
  char tail = 0;
  bool ok = false;
  if (owned.size() == 10) {
    ok = std::sscanf(owned.c_str(), "%4d-%2u-%2u%c", &y, &mo, &d, &tail) == 3;
  } else if (owned.size() == 20) {
    ok = std::sscanf(owned.c_str(), "%4d-%2u-%2uT%2u:%2u:%2u%c", &y, &mo, &d,
                     &h, &mi, &s, &tail) == 7 &&
         tail == 'Z';
  }
  year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                     std::chrono::day{d}};
  if (!ok || !ymd.ok() || h > 23 || mi > 59 || s > 59) {
    throw std::invalid_argument("unrecognized timestamp: " + owned);
  }
  return ToTimestamp(ymd) + h * 3600 + mi * 60 + s;
}

std::string FormatUtc(Timestamp ts) {
  year_month_day ymd = ToDate(ts);
  Timestamp sod = ts - ToTimestamp(ymd);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(sod / 3600),
                static_cast<int>(sod % 3600 / 60), static_cast<int>(sod % 60));
  return buf;
}

Timestamp MonthStart(Timestamp ts) {
  year_month_day ymd = ToDate(ts);
  return ToTimestamp(ymd.year() / ymd.month() / std::chrono::day{1});
}

Timestamp AddMonths(Timestamp ts, int months) {
  year_month_day ymd = ToDate(ts);
  Timestamp sod = ts - ToTimestamp(ymd);
  year_month_day shifted = ymd + std::chrono::months{months};
  if (!shifted.ok()) {
    shifted = year_month_day{std::chrono::year_month_day_last{
        shifted.year(), std::chrono::month_day_last{shifted.month()}}};
  }
  return ToTimestamp(shifted) + sod;
}

void CsvWriter::Field(std::string_view field, bool first) {
  if (!first) out_ << ',';
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    out_ << field;
    return;
  }
  out_ << '"';
  for (char c : field) {
    if (c == '"') out_ << '"';
    out_ << c;
  }
  out_ << '"';
}

void CsvWriter::Row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) Field(fields[i], i == 0);
  out_ << '\n';
}

void CsvWriter::Row(std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (std::string_view f : fields) {
    Field(f, first);
    first = false;
  }
  out_ << '\n';
}

std::size_t CsvTable::Column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw DataError("missing CSV column: " + std::string(name));
}

CsvTable ReadCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        field.clear();
        row.clear();
        any = false;
        break;
      default:
        field += c;
        any = true;
    }
  }
  if (quoted) throw DataError("unterminated quote in " + path.string());
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }

  CsvTable table;
  if (rows.empty()) throw DataError("empty CSV: " + path.string());
  table.header = std::move(rows.front());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != table.header.size()) {
      throw DataError("ragged CSV row in " + path.string());
    }
    table.rows.push_back(std::move(rows[r]));
  }
  return table;
}

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> chunk;
  while (in) {
    in.read(chunk.data(), chunk.size());
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), chunk.data(),
                       static_cast<std::size_t>(in.gcount()));
    }
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

}  // namespace discourse::io
