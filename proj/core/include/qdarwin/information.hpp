#pragma once

#include <span>
#include <utility>

#include "qdarwin/state.hpp"

namespace qdarwin {

/// Tr(rho M). Throws DimensionError on mismatch, InvariantViolation if the
/// imaginary residue exceeds tol.
double expectation(const DensityMatrix& rho, const HermitianOperator& m, double tol = kDefaultTol);

/// Half the sum of absolute eigenvalues of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const Matrix& a, const Matrix& b);

/// Von Neumann entropy in bits. Eigenvalues below kEigenClamp count as 0.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues);

/// S(A) + S(B) - S(AB) in bits. partA and partB must partition all subsystems.
double mutual_information(const DensityMatrix& rho, std::span<const std::size_t> part_a,
                          std::span<const std::size_t> part_b);

double purity(const DensityMatrix& rho);

/// Absolute sum of the negative eigenvalues of the partial transpose on `part`.
/// Eigenvalues above -kEigenClamp are treated as zero.
double negativity(const DensityMatrix& rho, std::span<const std::size_t> part);
double negativity_of_spectrum(const Eigen::VectorXd& eigenvalues);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Post-selection: returns (P psi / |P psi|, |P psi|^2). The projector must be
/// idempotent within tol; a probability below tol throws PostselectionError.
std::pair<Ket, double> project_and_renormalize(const Ket& psi, const HermitianOperator& projector,
                                               double tol = kDefaultTol);

}  // namespace qdarwin
