// Copyright 2026 The fragqite Authors
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

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fragqite/hamiltonians.hpp"
#include "fragqite/qsp.hpp"
#include "fragqite/simulator.hpp"

namespace fragqite {

using Json = nlohmann::ordered_json;

Json to_json(const HamiltonianSpec& h);
HamiltonianSpec hamiltonian_from_json(const Json& j);

Json to_json(const ChebyshevSeries& s);
Json to_json(const FourierSeries& s);

Json to_json(const PulseSeq1& p);
Json to_json(const PulseSeq2& p);
/// Restores the angles of a pulse file; the target series is not stored.
PulseSeq1 pulses1_from_json(const Json& j);
PulseSeq2 pulses2_from_json(const Json& j);

Json to_json(const SimResult& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Shortest decimal that round-trips a double.
std::string format_double(double v);

/// CSV with a fixed header; rows are flushed as they are written.
class CsvWriter {
 public:
  /// Empty path writes to stdout.
  CsvWriter(const std::string& path, std::vector<std::string> header);

  CsvWriter& operator<<(const std::string& field);
  CsvWriter& operator<<(const char* field) { return *this << std::string(field); }
  CsvWriter& operator<<(double v) { return *this << format_double(v); }
  CsvWriter& operator<<(int v) { return *this << std::to_string(v); }
  CsvWriter& operator<<(long long v) { return *this << std::to_string(v); }
  CsvWriter& operator<<(unsigned long long v) { return *this << std::to_string(v); }
  CsvWriter& operator<<(unsigned long v) { return *this << std::to_string(v); }
  /// Ends the current row.
  void end_row();

 private:
  std::ofstream file_;
  std::ostream* out_;
  std::size_t columns_;
  std::vector<std::string> row_;
};

}  // namespace fragqite
