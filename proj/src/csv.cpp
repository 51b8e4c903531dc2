//
// Copyright 2026 The StratDP Authors
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
//

#include "stratdp/csv.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "stratdp/errors.hpp"

namespace stratdp {

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {
  // Fail before any computation when the destination is unwritable.
  std::ofstream probe(path_, std::ios::app);
  if (!probe) {
    throw IoError("CsvWriter: cannot open '" + path_ + "' for writing");
  }
}

CsvWriter::~CsvWriter() {
  try {
    Close();
  } catch (...) {
    // Destructor must not throw; Close() explicitly to observe failures.
  }
}

void CsvWriter::Comment(const std::string& key, const std::string& value) {
  buffer_ += "# " + key + ": " + value + "\n";
}

void CsvWriter::Timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
  Comment("timestamp", stamp);
}

void CsvWriter::Header(std::span<const std::string> columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += columns[i];
  }
  buffer_ += '\n';
}

void CsvWriter::BeginRow() {
  in_row_ = true;
  first_field_ = true;
}

void CsvWriter::Field(const std::string& value) {
  if (!first_field_) buffer_ += ',';
  buffer_ += value;
  first_field_ = false;
}

void CsvWriter::Field(double value) { Field(FormatDouble(value)); }

void CsvWriter::Field(std::size_t value) { Field(std::to_string(value)); }

void CsvWriter::EndRow() {
  buffer_ += '\n';
  in_row_ = false;
}

void CsvWriter::Close() {
  if (closed_) return;
  closed_ = true;
  std::ofstream out(path_, std::ios::trunc);
  if (!out) {
    throw IoError("CsvWriter: cannot open '" + path_ + "' for writing");
  }
  out << buffer_;
  if (!out.good()) {
    throw IoError("CsvWriter: write failed for '" + path_ + "'");
  }
}

std::vector<std::string> ReadLinesExceptTimestamp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("ReadLinesExceptTimestamp: cannot open '" + path + "'");
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# timestamp:", 0) == 0) continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace stratdp
