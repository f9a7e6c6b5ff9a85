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

#include "purcellsim/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "purcellsim/errors.hpp"

namespace purcell {

namespace {

void require_same_layout(const SpaceLayout& a, const SpaceLayout& b,
                         const char* what) {
  if (!(a == b)) {
    throw LayoutMismatch(std::string(what) + ": layouts differ");
  }
}

}  // namespace

SpaceLayout::SpaceLayout(std::vector<int> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) {
    throw InvalidArgument("SpaceLayout: dims and labels differ in length");
  }
  if (dims_.empty()) {
    throw InvalidArgument("SpaceLayout: at least one subsystem is required");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 1) {
      throw InvalidDimension("SpaceLayout: subsystem '" + labels_[i] +
                             "' has non-positive dimension");
    }
    if (!seen.insert(labels_[i]).second) {
      throw InvalidArgument("SpaceLayout: duplicate label '" + labels_[i] + "'");
    }
    total_ *= dims_[i];
  }
}

SpaceLayout SpaceLayout::single(std::string label, int dim) {
  return SpaceLayout({dim}, {std::move(label)});
}

bool SpaceLayout::contains(const std::string& label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t SpaceLayout::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw InvalidArgument("unknown subsystem label '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

SpaceLayout SpaceLayout::restricted_to(std::span<const std::string> keep) const {
  if (keep.empty()) {
    throw InvalidArgument("restricted_to: empty label set");
  }
  std::vector<bool> wanted(size(), false);
  for (const auto& label : keep) {
    wanted[index_of(label)] = true;
  }
  std::vector<int> dims;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < size(); ++i) {
    if (wanted[i]) {
      dims.push_back(dims_[i]);
      labels.push_back(labels_[i]);
    }
  }
  return SpaceLayout(std::move(dims), std::move(labels));
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

Operator::Operator(SpaceLayout layout, Matrix matrix, bool hermitian)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), hermitian_(hermitian) {
  const int n = layout_.total_dim();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw LayoutMismatch("Operator: matrix dimension does not match layout");
  }
  if (hermitian_) {
    const double scale = std::max(max_abs(matrix_), 1.0e-300);
    if (hermiticity_defect(matrix_) > 1e-12 * scale) {
      throw InvalidArgument("Operator: flagged Hermitian but M != M^dagger");
    }
  }
}

Operator Operator::adjoint() const {
  return Operator(layout_, matrix_.adjoint(), hermitian_);
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_layout(lhs.layout(), rhs.layout(), "operator*");
  return Operator(lhs.layout(), lhs.matrix() * rhs.matrix());
}

Operator operator+(const Operator& lhs, const Operator& rhs) {
  require_same_layout(lhs.layout(), rhs.layout(), "operator+");
  return Operator(lhs.layout(), lhs.matrix() + rhs.matrix(),
                  lhs.hermitian() && rhs.hermitian());
}

Operator operator-(const Operator& lhs, const Operator& rhs) {
  require_same_layout(lhs.layout(), rhs.layout(), "operator-");
  return Operator(lhs.layout(), lhs.matrix() - rhs.matrix(),
                  lhs.hermitian() && rhs.hermitian());
}

Operator operator*(Complex scale, const Operator& op) {
  return Operator(op.layout(), scale * op.matrix(),
                  op.hermitian() && scale.imag() == 0.0);
}

Ket::Ket(SpaceLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.total_dim()) {
    throw LayoutMismatch("Ket: amplitude count does not match layout");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("Ket: amplitudes are not unit norm");
  }
}

Ket basis_ket(const SpaceLayout& layout, std::span<const int> levels) {
  if (levels.size() != layout.size()) {
    throw LayoutMismatch("basis_ket: one level per subsystem is required");
  }
  int index = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0 || levels[i] >= layout.dims()[i]) {
      throw InvalidDimension("basis_ket: level out of range for '" +
                             layout.labels()[i] + "'");
    }
    index = index * layout.dims()[i] + levels[i];
  }
  Vector v = Vector::Zero(layout.total_dim());
  v(index) = 1.0;
  return Ket(layout, std::move(v));
}

namespace {

SpaceLayout concat(const SpaceLayout& a, const SpaceLayout& b) {
  std::vector<int> dims = a.dims();
  std::vector<std::string> labels = a.labels();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return SpaceLayout(std::move(dims), std::move(labels));
}

}  // namespace

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) =
          lhs(i, j) * rhs;
    }
  }
  return out;
}

Ket tensor(const Ket& lhs, const Ket& rhs) {
  const Vector& a = lhs.amplitudes();
  const Vector& b = rhs.amplitudes();
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  out.normalize();
  return Ket(concat(lhs.layout(), rhs.layout()), std::move(out));
}

DensityMatrix::DensityMatrix(SpaceLayout layout, Matrix matrix, double trace_tol,
                             double positivity_tol)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  const int n = layout_.total_dim();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw LayoutMismatch("DensityMatrix: matrix dimension does not match layout");
  }
  if (!matrix_.allFinite()) {
    throw NumericalError("DensityMatrix: non-finite entries");
  }
  if (hermiticity_defect(matrix_) > 1e-10) {
    throw InvalidArgument("DensityMatrix: not Hermitian");
  }
  if (std::abs(matrix_.trace().real() - 1.0) > trace_tol) {
    throw InvalidArgument("DensityMatrix: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -positivity_tol) {
    throw InvalidArgument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix::DensityMatrix(const Ket& ket)
    : DensityMatrix(ket.layout(), ket.amplitudes() * ket.amplitudes().adjoint()) {}

double DensityMatrix::purity() const {
  return (matrix_ * matrix_).trace().real();
}

DensityMatrix tensor(const DensityMatrix& lhs, const DensityMatrix& rhs) {
  return DensityMatrix(concat(lhs.layout(), rhs.layout()),
                       kron(lhs.matrix(), rhs.matrix()));
}

Operator destroy(int dim) {
  if (dim < 2) {
    throw InvalidDimension("destroy: dimension must be at least 2");
  }
  Matrix m = Matrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) {
    m(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  return Operator(SpaceLayout::single("mode", dim), std::move(m));
}

Operator create(int dim) { return destroy(dim).adjoint(); }

Operator number(int dim) {
  const Operator a = destroy(dim);
  return Operator(a.layout(), a.matrix().adjoint() * a.matrix(), true);
}

Operator identity(int dim) {
  return Operator(SpaceLayout::single("mode", dim), Matrix::Identity(dim, dim), true);
}

PauliOps pauli_ops() {
  const SpaceLayout layout = SpaceLayout::single("qubit", 2);
  Matrix sm = Matrix::Zero(2, 2);
  sm(0, 1) = 1.0;  // |g><e|
  Matrix sz = Matrix::Zero(2, 2);
  sz(0, 0) = -1.0;
  sz(1, 1) = 1.0;
  return PauliOps{Operator(layout, sm.adjoint()), Operator(layout, sm),
                  Operator(layout, sz, true)};
}

Operator embed(const Operator& op, const SpaceLayout& layout,
               const std::string& which) {
  const std::size_t target = layout.index_of(which);
  if (op.layout().total_dim() != layout.dims()[target]) {
    throw LayoutMismatch("embed: operator dimension does not match subsystem '" +
                         which + "'");
  }
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const int d = layout.dims()[i];
    out = kron(out, i == target ? op.matrix() : Matrix::Identity(d, d));
  }
  return Operator(layout, std::move(out), op.hermitian());
}

CoherentState coherent_state(Complex alpha, int dim) {
  if (dim < 2) {
    throw InvalidDimension("coherent_state: dimension must be at least 2");
  }
  Vector c(dim);
  c(0) = 1.0;
  for (int n = 1; n < dim; ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  c.normalize();

  // Poisson tail sum_{n>=dim} e^{-x} x^n / n!, summed in log space.
  const double x = std::norm(alpha);
  double tail = 0.0;
  if (x > 0.0) {
    const double log_x = std::log(x);
    for (int n = dim;; ++n) {
      const double term = std::exp(-x + n * log_x - std::lgamma(n + 1.0));
      tail += term;
      if (n > x && term < 1e-18 * std::max(tail, 1e-300)) break;
      if (n > dim + 100000) break;
    }
  }
  return CoherentState{Ket(SpaceLayout::single("mode", dim), std::move(c)),
                       std::min(tail, 1.0)};
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep) {
  const SpaceLayout& layout = rho.layout();
  const SpaceLayout reduced = layout.restricted_to(keep);
  std::vector<bool> kept(layout.size(), false);
  for (const auto& label : keep) kept[layout.index_of(label)] = true;

  const int n = layout.total_dim();
  std::vector<int> kept_index(n), traced_index(n);
  std::vector<int> digits(layout.size());
  for (int i = 0; i < n; ++i) {
    int rem = i;
    for (std::size_t s = layout.size(); s-- > 0;) {
      digits[s] = rem % layout.dims()[s];
      rem /= layout.dims()[s];
    }
    int k = 0, t = 0;
    for (std::size_t s = 0; s < layout.size(); ++s) {
      if (kept[s]) {
        k = k * layout.dims()[s] + digits[s];
      } else {
        t = t * layout.dims()[s] + digits[s];
      }
    }
    kept_index[i] = k;
    traced_index[i] = t;
  }

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(reduced.total_dim(), reduced.total_dim());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (traced_index[i] == traced_index[j]) {
        out(kept_index[i], kept_index[j]) += m(i, j);
      }
    }
  }
  // Inherit the trace of the parent; only structure is validated here.
  const double tol = std::max(DensityMatrix::kDefaultTraceTol,
                              std::abs(m.trace().real() - 1.0) + 1e-12);
  // The parent was validated; tracing out can only amplify its rounding noise
  // by the traced dimension, so positivity is checked loosely.
  return DensityMatrix(reduced, std::move(out), tol, 1e-6);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::initializer_list<std::string> keep) {
  std::vector<std::string> labels(keep);
  return partial_trace(rho, std::span<const std::string>(labels));
}

Complex expectation(const Operator& op, const DensityMatrix& rho) {
  require_same_layout(op.layout(), rho.layout(), "expectation");
  // Tr(A rho) without forming the product.
  const Complex value = op.matrix().cwiseProduct(rho.matrix().transpose()).sum();
  return op.hermitian() ? Complex(value.real(), 0.0) : value;
}

Complex expectation(const Operator& op, const Ket& psi) {
  require_same_layout(op.layout(), psi.layout(), "expectation");
  const Complex value = psi.amplitudes().dot(op.matrix() * psi.amplitudes());
  return op.hermitian() ? Complex(value.real(), 0.0) : value;
}

}  // namespace purcell
