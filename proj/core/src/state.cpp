#include "qdarwin/state.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "qdarwin/errors.hpp"

namespace qdarwin {
namespace {

void require_square(const Matrix& m, const SubsystemLayout& layout, const char* what) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(what) + ": matrix is not square");
  if (static_cast<std::size_t>(m.rows()) != layout.total_dim()) {
    throw DimensionError(std::string(what) + ": matrix dimension " + std::to_string(m.rows()) +
                         " does not match layout " + layout.describe());
  }
}

}  // namespace

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitarity check: matrix is not square");
  if (u.size() == 0) return 0.0;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

// Ket

Ket::Ket(Vector amplitudes, SubsystemLayout layout, double tol)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
    throw DimensionError("ket: " + std::to_string(amplitudes_.size()) +
                         " amplitudes for layout " + layout_.describe());
  }
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > tol) {
    throw InvariantViolation("ket: norm " + std::to_string(n) + " is not 1");
  }
}

Ket::Ket(Vector amplitudes, SubsystemLayout layout, Unchecked)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {}

Ket Ket::normalized(Vector amplitudes, SubsystemLayout layout) {
  const double n = amplitudes.norm();
  if (n == 0.0 || !std::isfinite(n)) throw InvariantViolation("ket: cannot normalize a zero vector");
  amplitudes /= n;
  return {std::move(amplitudes), std::move(layout)};
}

Ket Ket::basis(SubsystemLayout layout, std::size_t flat_index) {
  if (flat_index >= layout.total_dim()) throw DimensionError("ket: basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  v(static_cast<Eigen::Index>(flat_index)) = 1.0;
  return {std::move(v), std::move(layout), unchecked};
}

Ket Ket::basis(SubsystemLayout layout, std::span<const std::size_t> digits) {
  const std::size_t f = layout.flat(digits);
  return basis(std::move(layout), f);
}

Complex Ket::inner(const Ket& other) const {
  if (dim() != other.dim()) throw DimensionError("ket inner product: dimension mismatch");
  return amplitudes_.dot(other.amplitudes_);
}

// HermitianOperator

HermitianOperator::HermitianOperator(Matrix entries, SubsystemLayout layout, double tol)
    : entries_(std::move(entries)), layout_(std::move(layout)) {
  require_square(entries_, layout_, "hermitian operator");
  const double defect = hermiticity_defect(entries_);
  if (defect > tol) {
    throw InvariantViolation("hermitian operator: |A - A^dagger| = " + std::to_string(defect));
  }
}

HermitianOperator::HermitianOperator(Matrix entries, SubsystemLayout layout, Unchecked)
    : entries_(std::move(entries)), layout_(std::move(layout)) {}

HermitianOperator HermitianOperator::identity(SubsystemLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return {Matrix::Identity(d, d), std::move(layout), unchecked};
}

HermitianOperator HermitianOperator::projector(const Ket& psi) {
  return {psi.amplitudes() * psi.amplitudes().adjoint(), psi.layout(), unchecked};
}

Eigen::VectorXd HermitianOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// DensityMatrix

DensityMatrix::DensityMatrix(Matrix entries, SubsystemLayout layout, double tol)
    : entries_(std::move(entries)), layout_(std::move(layout)) {
  require_square(entries_, layout_, "density matrix");
  const double defect = hermiticity_defect(entries_);
  if (defect > tol) throw InvariantViolation("density matrix: not Hermitian (defect " + std::to_string(defect) + ")");
  const double tr = entries_.trace().real();
  if (std::abs(tr - 1.0) > tol) throw InvariantViolation("density matrix: trace " + std::to_string(tr));
  const double min_eig = eigenvalues()(0);
  if (min_eig < -tol) {
    throw InvariantViolation("density matrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix::DensityMatrix(Matrix entries, SubsystemLayout layout, Unchecked)
    : entries_(std::move(entries)), layout_(std::move(layout)) {}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
  return {psi.amplitudes() * psi.amplitudes().adjoint(), psi.layout(), unchecked};
}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return {Matrix::Identity(d, d) / static_cast<double>(d), std::move(layout), unchecked};
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities, SubsystemLayout layout) {
  if (probabilities.size() != layout.total_dim()) throw DimensionError("diagonal state: size mismatch");
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = probabilities[static_cast<std::size_t>(i)];
  return {std::move(m), std::move(layout)};
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace qdarwin
