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

#include <stdexcept>
#include <string>

namespace purcell {

// Every failure surfaced by the library derives from Error. The CLI maps
// ConfigError to exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidDimension : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class LayoutMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidRate : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Perturbative formula evaluated too close to one of its poles.
class PoleError : public Error {
 public:
  PoleError(std::string branch, const std::string& what)
      : Error(what), branch_(std::move(branch)) {}
  const std::string& branch() const noexcept { return branch_; }

 private:
  std::string branch_;
};

class NonDispersiveRegime : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public NumericalError {
 public:
  NonConvergence(double trailing_slope, const std::string& what)
      : NumericalError(what), trailing_slope_(trailing_slope) {}
  double trailing_slope() const noexcept { return trailing_slope_; }

 private:
  double trailing_slope_;
};

// Schema violation in a user config. field() names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace purcell
