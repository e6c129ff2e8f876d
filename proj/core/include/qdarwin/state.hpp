#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>

#include <Eigen/Dense>

#include "qdarwin/layout.hpp"

namespace qdarwin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default tolerance for invariant checks.
inline constexpr double kDefaultTol = 1e-10;
/// Eigenvalues with magnitude below this are treated as exact zeros.
inline constexpr double kEigenClamp = 1e-12;

/// Tag for constructors that skip invariant checks. The caller guarantees them.
struct Unchecked {};
inline constexpr Unchecked unchecked{};

class Ket {
 public:
  /// Throws DimensionError on size mismatch and InvariantViolation if |norm - 1| > tol.
  Ket(Vector amplitudes, SubsystemLayout layout, double tol = kDefaultTol);
  Ket(Vector amplitudes, SubsystemLayout layout, Unchecked);

  /// Rescales to unit norm. Throws InvariantViolation for a zero vector.
  static Ket normalized(Vector amplitudes, SubsystemLayout layout);
  static Ket basis(SubsystemLayout layout, std::size_t flat_index);
  static Ket basis(SubsystemLayout layout, std::span<const std::size_t> digits);

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  Complex inner(const Ket& other) const;

 private:
  Vector amplitudes_;
  SubsystemLayout layout_;
};

class HermitianOperator {
 public:
  /// Throws InvariantViolation if not Hermitian within tol (entrywise).
  HermitianOperator(Matrix entries, SubsystemLayout layout, double tol = kDefaultTol);
  HermitianOperator(Matrix entries, SubsystemLayout layout, Unchecked);

  static HermitianOperator identity(SubsystemLayout layout);
  /// |psi><psi|
  static HermitianOperator projector(const Ket& psi);

  const Matrix& entries() const noexcept { return entries_; }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

 private:
  Matrix entries_;
  SubsystemLayout layout_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace, and min eigenvalue >= -tol.
  DensityMatrix(Matrix entries, SubsystemLayout layout, double tol = kDefaultTol);
  DensityMatrix(Matrix entries, SubsystemLayout layout, Unchecked);

  static DensityMatrix pure(const Ket& psi);
  static DensityMatrix maximally_mixed(SubsystemLayout layout);
  /// Diagonal state with the given probabilities in the computational basis.
  static DensityMatrix diagonal(std::span<const double> probabilities, SubsystemLayout layout);

  const Matrix& entries() const noexcept { return entries_; }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  Complex operator()(std::size_t r, std::size_t c) const {
    return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;
  HermitianOperator as_operator() const { return {entries_, layout_, unchecked}; }

 private:
  Matrix entries_;
  SubsystemLayout layout_;
};

/// Largest entrywise |A - A^dagger|.
double hermiticity_defect(const Matrix& m);
/// max |U^dagger U - I| entrywise; requires square input.
double unitarity_defect(const Matrix& u);

Matrix kron(const Matrix& a, const Matrix& b);

/// Hermitian part (A + A^dagger) / 2, used to scrub rounding asymmetry.
Matrix hermitian_part(const Matrix& m);

}  // namespace qdarwin
