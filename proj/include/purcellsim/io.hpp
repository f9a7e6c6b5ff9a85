// Copyright 2026 The purcellsim Authors
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

#include <string>
#include <vector>

#include <json.hpp>

#include "purcellsim/metrics.hpp"
#include "purcellsim/network.hpp"
#include "purcellsim/sweep.hpp"

namespace purcell {

// Scientific notation with 17 significant digits, "nan"/"inf" spelled out.
std::string csv_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  // Throws InvalidArgument when the row width differs from the header.
  void add_row(std::vector<std::string> cells);
  void add_numeric_row(const std::vector<double>& values);

  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Creates parent directories as needed; throws Error on I/O failure.
void write_text(const std::string& path, const std::string& content);
void write_json(const std::string& path, const nlohmann::json& j);

CsvTable spectrum_table(const Spectrum& spectrum);
CsvTable phase_space_table(const PhaseSpaceGrid& grid);
CsvTable occupation_table(const std::vector<double>& p);
// Long format: axis_hz, t, <metric name>, status.
CsvTable sweep_table(const SweepResult& result);
nlohmann::json sweep_json(const SweepResult& result);

}  // namespace purcell
