#include "qdarwin/information.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdarwin/errors.hpp"
#include "qdarwin/kernels.hpp"

namespace qdarwin {
namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double expectation(const DensityMatrix& rho, const HermitianOperator& m, double tol) {
  require_same_dim(rho.dim(), m.dim(), "expectation");
  // Tr(rho M) = sum_ij rho_ij M_ji without forming the product.
  const Complex v = (rho.entries().transpose().cwiseProduct(m.entries())).sum();
  if (std::abs(v.imag()) > tol) {
    throw InvariantViolation("expectation: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace distance: dimension mismatch");
  }
  return 0.5 * hermitian_eigenvalues(hermitian_part(a - b)).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "trace distance");
  return trace_distance(rho.entries(), sigma.entries());
}

double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues(i);
    if (l > kEigenClamp) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of_spectrum(rho.eigenvalues()); }

double mutual_information(const DensityMatrix& rho, std::span<const std::size_t> part_a,
                          std::span<const std::size_t> part_b) {
  const std::size_t n = rho.layout().size();
  if (part_a.empty() || part_b.empty()) throw DimensionError("mutual information: empty part");
  const IndexSet a = normalize_indices(part_a, n);
  const IndexSet b = normalize_indices(part_b, n);
  if (a.size() != part_a.size() || b.size() != part_b.size()) {
    throw DimensionError("mutual information: repeated index within a part");
  }
  for (auto i : a) {
    if (std::binary_search(b.begin(), b.end(), i)) {
      throw DimensionError("mutual information: parts overlap at subsystem " + std::to_string(i));
    }
  }
  if (a.size() + b.size() != n) throw DimensionError("mutual information: parts do not cover all subsystems");
  return von_neumann_entropy(partial_trace(rho, a)) + von_neumann_entropy(partial_trace(rho, b)) -
         von_neumann_entropy(rho);
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.entries().squaredNorm();
}

double negativity_of_spectrum(const Eigen::VectorXd& eigenvalues) {
  double neg = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) < -kEigenClamp) neg -= eigenvalues(i);
  }
  return neg;
}

double negativity(const DensityMatrix& rho, std::span<const std::size_t> part) {
  return negativity_of_spectrum(partial_transpose(rho, part).eigenvalues());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "fidelity");
  const Matrix s = psd_sqrt(rho.entries());
  const Matrix inner = s * sigma.entries() * s;
  const double f = hermitian_eigenvalues(hermitian_part(inner)).cwiseMax(0.0).cwiseSqrt().sum();
  return std::min(f * f, 1.0);
}

std::pair<Ket, double> project_and_renormalize(const Ket& psi, const HermitianOperator& projector,
                                               double tol) {
  require_same_dim(psi.dim(), projector.dim(), "post-selection");
  const Matrix& p = projector.entries();
  const double idem = (p * p - p).cwiseAbs().maxCoeff();
  if (idem > tol) throw ArgumentError("post-selection: operator is not a projector (|P^2 - P| = " + std::to_string(idem) + ")");
  Vector v = p * psi.amplitudes();
  const double prob = v.squaredNorm();
  if (prob < tol) throw PostselectionError("post-selection: outcome has zero probability");
  v /= std::sqrt(prob);
  return {Ket(std::move(v), psi.layout(), unchecked), std::min(prob, 1.0)};
}

}  // namespace qdarwin
