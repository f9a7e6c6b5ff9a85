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

// Dense linear algebra over truncated tensor-product Hilbert spaces.
//
// Basis conventions used throughout the library:
//   * qubit index 0 is |g>, index 1 is |e>; sigma_z = diag(-1, +1)
//   * subsystem order for the readout circuit is (qubit, filter, readout)
//   * the first listed subsystem is the most significant Kronecker factor

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace purcell {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

class SpaceLayout {
 public:
  SpaceLayout() = default;
  SpaceLayout(std::vector<int> dims, std::vector<std::string> labels);

  static SpaceLayout single(std::string label, int dim);

  const std::vector<int>& dims() const noexcept { return dims_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return dims_.size(); }
  int total_dim() const noexcept { return total_; }

  bool contains(const std::string& label) const noexcept;
  // Throws InvalidArgument for an unknown label.
  std::size_t index_of(const std::string& label) const;
  int dim_of(const std::string& label) const { return dims_[index_of(label)]; }

  // Sub-layout with the given labels in this layout's relative order.
  SpaceLayout restricted_to(std::span<const std::string> keep) const;

  bool operator==(const SpaceLayout&) const = default;

 private:
  std::vector<int> dims_;
  std::vector<std::string> labels_;
  int total_ = 1;
};

class Operator {
 public:
  Operator(SpaceLayout layout, Matrix matrix, bool hermitian = false);

  const SpaceLayout& layout() const noexcept { return layout_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  bool hermitian() const noexcept { return hermitian_; }
  Operator adjoint() const;

 private:
  SpaceLayout layout_;
  Matrix matrix_;
  bool hermitian_;
};

Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator+(const Operator& lhs, const Operator& rhs);
Operator operator-(const Operator& lhs, const Operator& rhs);
Operator operator*(Complex scale, const Operator& op);

class Ket {
 public:
  // Amplitudes must already be unit norm within 1e-10.
  Ket(SpaceLayout layout, Vector amplitudes);

  const SpaceLayout& layout() const noexcept { return layout_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }

 private:
  SpaceLayout layout_;
  Vector amplitudes_;
};

Ket basis_ket(const SpaceLayout& layout, std::span<const int> levels);
Ket tensor(const Ket& lhs, const Ket& rhs);

class DensityMatrix {
 public:
  static constexpr double kDefaultTraceTol = 1e-9;
  static constexpr double kDefaultPositivityTol = 1e-8;

  // Validates Hermiticity (1e-10), trace (trace_tol) and positivity
  // (min eigenvalue >= -positivity_tol).
  DensityMatrix(SpaceLayout layout, Matrix matrix,
                double trace_tol = kDefaultTraceTol,
                double positivity_tol = kDefaultPositivityTol);
  explicit DensityMatrix(const Ket& ket);

  const SpaceLayout& layout() const noexcept { return layout_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  double purity() const;

 private:
  SpaceLayout layout_;
  Matrix matrix_;
};

DensityMatrix tensor(const DensityMatrix& lhs, const DensityMatrix& rhs);

Matrix kron(const Matrix& lhs, const Matrix& rhs);

// Annihilation operator with sqrt(k) at (k-1, k).
Operator destroy(int dim);
Operator create(int dim);
Operator number(int dim);
Operator identity(int dim);

struct PauliOps {
  Operator sigma_plus;
  Operator sigma_minus;
  Operator sigma_z;
};
PauliOps pauli_ops();

// I (x) ... (x) op (x) ... (x) I, with op placed at `which`.
Operator embed(const Operator& op, const SpaceLayout& layout,
               const std::string& which);

struct CoherentState {
  Ket ket;
  // 1 - sum_{n<dim} |<n|alpha>|^2 for the untruncated coherent state.
  double truncation_weight;
};
CoherentState coherent_state(Complex alpha, int dim);

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::initializer_list<std::string> keep);

Complex expectation(const Operator& op, const DensityMatrix& rho);
Complex expectation(const Operator& op, const Ket& psi);

// Max-modulus entry of m - m^dagger.
double hermiticity_defect(const Matrix& m);
double max_abs(const Matrix& m);

}  // namespace purcell
