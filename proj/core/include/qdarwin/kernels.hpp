#pragma once

#include <span>

#include "qdarwin/layout.hpp"
#include "qdarwin/state.hpp"

// Tensor-index kernels over big-endian subsystem layouts.

namespace qdarwin {

Ket tensor(const Ket& a, const Ket& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Reduced state on `keep` (kept subsystems stay in original order).
/// Throws DimensionError for an empty or out-of-range keep set.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// Reduced state of a pure state without forming |psi><psi| on the full space.
/// Cost is O(d_keep^2 * d_traced), so it scales to kets far beyond the matrix budget.
DensityMatrix partial_trace(const Ket& psi, std::span<const std::size_t> keep);

/// Raw-matrix partial trace over a layout; no invariant checks on the result.
Matrix partial_trace_matrix(const Matrix& m, const SubsystemLayout& layout,
                            std::span<const std::size_t> keep);

/// Transpose applied to the tensor factors in `part` only.
HermitianOperator partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> part);
Matrix partial_transpose_matrix(const Matrix& m, const SubsystemLayout& layout,
                                std::span<const std::size_t> part);

/// Applies `op` (dimension = product of target dims, targets in the order
/// given) to the subsystems `targets` of a raw amplitude vector.
void apply_local_inplace(Vector& amplitudes, const SubsystemLayout& layout, const Matrix& op,
                         std::span<const std::size_t> targets);

/// Unitary `op` on `targets`; result renormalization is not performed.
Ket apply_local(const Ket& psi, const Matrix& op, std::span<const std::size_t> targets);

/// Embeds `op` acting on `targets` into the full space (identity elsewhere).
Matrix embed_operator(const Matrix& op, const SubsystemLayout& layout,
                      std::span<const std::size_t> targets);

}  // namespace qdarwin
