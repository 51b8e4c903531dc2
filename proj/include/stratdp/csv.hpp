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

#ifndef STRATDP_CSV_HPP_
#define STRATDP_CSV_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace stratdp {

inline constexpr const char* kVersion = "0.1.0";

// Doubles rendered with 12 significant digits, '.' decimal point.
std::string FormatDouble(double v);

// Comma-separated writer with '#'-prefixed header comments. The timestamp
// line is the only part of the output that differs between identical runs;
// everything else is a pure function of the data written.
class CsvWriter {
 public:
  explicit CsvWriter(std::string path);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  // "# key: value"
  void Comment(const std::string& key, const std::string& value);
  // "# timestamp: <UTC ISO-8601>", excluded from reproducibility contracts.
  void Timestamp();

  void Header(std::span<const std::string> columns);

  void BeginRow();
  void Field(const std::string& value);
  void Field(double value);
  void Field(std::size_t value);
  void EndRow();

  void Close();

 private:
  std::string path_;
  std::string buffer_;
  bool in_row_ = false;
  bool first_field_ = false;
  bool closed_ = false;
};

// File lines with any "# timestamp:" line removed; used to compare outputs
// under the byte-exact-except-timestamp contract.
std::vector<std::string> ReadLinesExceptTimestamp(const std::string& path);

}  // namespace stratdp

#endif  // STRATDP_CSV_HPP_
