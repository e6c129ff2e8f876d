#include "qdarwin/povm.hpp"

#include <string>

#include "qdarwin/errors.hpp"
#include "qdarwin/information.hpp"

namespace qdarwin {

Povm::Povm(std::vector<HermitianOperator> elements, double tol) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvariantViolation("povm: no elements");
  const auto d = static_cast<Eigen::Index>(elements_.front().dim());
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    const auto& e = elements_[k];
    if (static_cast<Eigen::Index>(e.dim()) != d) throw DimensionError("povm: elements differ in dimension");
    const double min_eig = e.eigenvalues()(0);
    if (min_eig < -tol) {
      throw InvariantViolation("povm: element " + std::to_string(k) + " has eigenvalue " +
                               std::to_string(min_eig));
    }
    sum += e.entries();
  }
  const double dev = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > tol) throw InvariantViolation("povm: elements sum to identity only within " + std::to_string(dev));
}

Povm Povm::projective(const std::vector<Ket>& basis, double tol) {
  std::vector<HermitianOperator> elems;
  elems.reserve(basis.size());
  for (const auto& b : basis) elems.push_back(HermitianOperator::projector(b));
  return Povm(std::move(elems), tol);
}

Povm Povm::trivial(const SubsystemLayout& layout) { return Povm({HermitianOperator::identity(layout)}); }

std::vector<double> povm_probabilities(const DensityMatrix& rho, const Povm& povm, double tol) {
  if (rho.dim() != povm.dim()) throw DimensionError("povm probabilities: dimension mismatch");
  std::vector<double> p;
  p.reserve(povm.size());
  for (const auto& m : povm.elements()) p.push_back(expectation(rho, m, tol));
  return p;
}

}  // namespace qdarwin
