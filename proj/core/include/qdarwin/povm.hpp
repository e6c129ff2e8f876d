#pragma once

#include <vector>

#include "qdarwin/state.hpp"

namespace qdarwin {

/// Generalized measurement {M_k}: PSD elements summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<HermitianOperator> elements, double tol = kDefaultTol);

  /// Rank-one projective measurement onto an orthonormal basis.
  static Povm projective(const std::vector<Ket>& basis, double tol = kDefaultTol);
  /// Single outcome {I}.
  static Povm trivial(const SubsystemLayout& layout);

  const std::vector<HermitianOperator>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return elements_.front().dim(); }
  const SubsystemLayout& layout() const noexcept { return elements_.front().layout(); }

 private:
  std::vector<HermitianOperator> elements_;
};

/// p_k = Tr(M_k rho).
std::vector<double> povm_probabilities(const DensityMatrix& rho, const Povm& povm,
                                       double tol = kDefaultTol);

}  // namespace qdarwin
