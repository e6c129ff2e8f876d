#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdarwin {

using IndexSet = std::vector<std::size_t>;

// Ordered tensor-product structure of a Hilbert space.
//
// Indexing is big-endian: the first subsystem is the most significant digit
// of the composite index, so for dims (d0, d1, d2) the flat index of digits
// (i0, i1, i2) is (i0 * d1 + i1) * d2 + i2.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::vector<std::size_t> dims, std::vector<std::string> labels);

  /// n qubits labelled prefix0, prefix1, ...
  static SubsystemLayout qubits(std::size_t n, std::string_view prefix = "q");
  static SubsystemLayout single(std::size_t dim, std::string label);

  std::size_t size() const noexcept { return dims_.size(); }
  bool empty() const noexcept { return dims_.empty(); }
  std::size_t total_dim() const noexcept { return total_; }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Position of the subsystem with this label; throws DimensionError if absent.
  std::size_t index_of(std::string_view label) const;

  /// Multiplier of subsystem i's digit in the flat index.
  std::size_t stride(std::size_t i) const { return strides_.at(i); }

  std::vector<std::size_t> digits(std::size_t flat) const;
  std::size_t flat(std::span<const std::size_t> digits) const;

  /// Layout of `*this ⊗ other`. Labels of `other` that collide with ours get
  /// a `#k` suffix, k being their position in the result.
  SubsystemLayout concat(const SubsystemLayout& other) const;

  /// Sub-layout of the given subsystems, kept in their original order.
  SubsystemLayout select(std::span<const std::size_t> indices) const;

  /// Indices not in `indices`, ascending.
  IndexSet complement(std::span<const std::size_t> indices) const;

  /// Same dimension sequence (labels ignored).
  bool same_shape(const SubsystemLayout& other) const noexcept { return dims_ == other.dims_; }

  bool operator==(const SubsystemLayout& other) const = default;

  std::string describe() const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// Sorted, de-duplicated, range-checked copy of an index set.
IndexSet normalize_indices(std::span<const std::size_t> indices, std::size_t count);

/// Qubit budget for dense models. The default of 12 qubits caps matrices at 4096 x 4096.
struct DimensionBudget {
  std::size_t max_qubits = 12;

  /// Throws BudgetExceeded when `dim` exceeds 2^max_qubits.
  void check(std::size_t dim, std::string_view what) const;
};

}  // namespace qdarwin
