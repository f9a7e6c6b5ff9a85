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

#include "purcellsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "purcellsim/errors.hpp"
#include "purcellsim/model.hpp"

namespace purcell {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw InvalidArgument("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                          std::to_string(header_.size()));
  }
  rows_.push_back(std::move(cells));
}

void CsvTable::add_numeric_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(csv_number(v));
  add_row(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + p.parent_path().string());
  }
  std::ofstream out(p, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path);
}

void write_json(const std::string& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

CsvTable spectrum_table(const Spectrum& s) {
  CsvTable t({"freq_hz", "re", "im", "mag_db"});
  for (std::size_t k = 0; k < s.freqs_hz.size(); ++k) {
    t.add_numeric_row({s.freqs_hz[k], s.s21[k].real(), s.s21[k].imag(), s.magnitude_db[k]});
  }
  return t;
}

CsvTable phase_space_table(const PhaseSpaceGrid& g) {
  CsvTable t({"re_alpha", "im_alpha", "q"});
  for (std::size_t iy = 0; iy < g.im_alpha.size(); ++iy) {
    for (std::size_t ix = 0; ix < g.re_alpha.size(); ++ix) {
      t.add_numeric_row({g.re_alpha[ix], g.im_alpha[iy],
                         g.values(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix))});
    }
  }
  return t;
}

CsvTable occupation_table(const std::vector<double>& p) {
  CsvTable t({"n", "probability"});
  for (std::size_t n = 0; n < p.size(); ++n) {
    t.add_row({std::to_string(n), csv_number(p[n])});
  }
  return t;
}

CsvTable sweep_table(const SweepResult& r) {
  CsvTable t({std::string(to_string(r.parameter)) + "_hz", "t",
              std::string(to_string(r.metric)), "status"});
  for (std::size_t i = 0; i < r.axis.size(); ++i) {
    const std::string status = r.status[i].ok ? "ok" : "failed: " + r.status[i].reason;
    for (std::size_t k = 0; k < r.times.size(); ++k) {
      t.add_row({csv_number(r.axis[i] / kTwoPi), csv_number(r.times[k]),
                 csv_number(r.values(static_cast<Eigen::Index>(i),
                                     static_cast<Eigen::Index>(k))),
                 status});
    }
  }
  return t;
}

nlohmann::json sweep_json(const SweepResult& r) {
  nlohmann::json j;
  j["parameter"] = std::string(to_string(r.parameter));
  j["metric"] = std::string(to_string(r.metric));
  std::vector<double> axis_hz;
  for (double v : r.axis) axis_hz.push_back(v / kTwoPi);
  j["axis_hz"] = axis_hz;
  j["times"] = r.times;
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json status = nlohmann::json::array();
  nlohmann::json diagnostics = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r.values.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < r.values.cols(); ++k) row.push_back(r.values(i, k));
    rows.push_back(row);
    const auto& s = r.status[static_cast<std::size_t>(i)];
    status.push_back(s.ok ? nlohmann::json("ok") : nlohmann::json("failed: " + s.reason));
    diagnostics.push_back({{"max_trace_deviation", s.max_trace_deviation},
                           {"min_eigenvalue", s.min_eigenvalue},
                           {"max_hermiticity_defect", s.max_hermiticity_defect},
                           {"renormalizations", s.renormalizations}});
  }
  j["values"] = rows;
  j["status"] = status;
  j["diagnostics"] = diagnostics;
  return j;
}

}  // namespace purcell
