#include "qdarwin/layout.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "qdarwin/errors.hpp"

namespace qdarwin {

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) {
    throw DimensionError("layout: " + std::to_string(dims_.size()) + " dims but " +
                         std::to_string(labels_.size()) + " labels");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] == 0) throw DimensionError("layout: subsystem '" + labels_[i] + "' has dimension 0");
    if (!seen.insert(labels_[i]).second) {
      throw DimensionError("layout: duplicate label '" + labels_[i] + "'");
    }
  }
  strides_.assign(dims_.size(), 1);
  total_ = 1;
  for (std::size_t i = dims_.size(); i-- > 0;) {
    strides_[i] = total_;
    total_ *= dims_[i];
  }
}

SubsystemLayout SubsystemLayout::qubits(std::size_t n, std::string_view prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
  return {std::vector<std::size_t>(n, 2), std::move(labels)};
}

SubsystemLayout SubsystemLayout::single(std::size_t dim, std::string label) {
  return {{dim}, {std::move(label)}};
}

std::size_t SubsystemLayout::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw DimensionError("layout: no subsystem labelled '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::size_t> SubsystemLayout::digits(std::size_t flat) const {
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    out[i] = flat % dims_[i];
    flat /= dims_[i];
  }
  return out;
}

std::size_t SubsystemLayout::flat(std::span<const std::size_t> digits) const {
  if (digits.size() != dims_.size()) throw DimensionError("layout: digit count mismatch");
  std::size_t f = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= dims_[i]) throw DimensionError("layout: digit out of range");
    f += digits[i] * strides_[i];
  }
  return f;
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<std::size_t> dims = dims_;
  std::vector<std::string> labels = labels_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  std::unordered_set<std::string> seen(labels.begin(), labels.end());
  for (std::size_t i = 0; i < other.labels_.size(); ++i) {
    std::string l = other.labels_[i];
    if (seen.contains(l)) l += "#" + std::to_string(labels_.size() + i);
    while (seen.contains(l)) l += "'";
    seen.insert(l);
    labels.push_back(std::move(l));
  }
  return {std::move(dims), std::move(labels)};
}

SubsystemLayout SubsystemLayout::select(std::span<const std::size_t> indices) const {
  IndexSet idx = normalize_indices(indices, size());
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (auto i : idx) {
    dims.push_back(dims_[i]);
    labels.push_back(labels_[i]);
  }
  return {std::move(dims), std::move(labels)};
}

IndexSet SubsystemLayout::complement(std::span<const std::size_t> indices) const {
  IndexSet idx = normalize_indices(indices, size());
  IndexSet out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!std::binary_search(idx.begin(), idx.end(), i)) out.push_back(i);
  }
  return out;
}

std::string SubsystemLayout::describe() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) os << ", ";
    os << labels_[i] << ':' << dims_[i];
  }
  os << ']';
  return os.str();
}

IndexSet normalize_indices(std::span<const std::size_t> indices, std::size_t count) {
  IndexSet out(indices.begin(), indices.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.back() >= count) {
    throw DimensionError("subsystem index " + std::to_string(out.back()) + " out of range for " +
                         std::to_string(count) + " subsystems");
  }
  return out;
}

void DimensionBudget::check(std::size_t dim, std::string_view what) const {
  if (max_qubits >= 63) return;
  const std::size_t cap = std::size_t{1} << max_qubits;
  if (dim > cap) {
    throw BudgetExceeded(std::string(what) + ": dimension " + std::to_string(dim) +
                         " exceeds the budget of " + std::to_string(max_qubits) + " qubits (" +
                         std::to_string(cap) + ")");
  }
}

}  // namespace qdarwin
