#include "qdarwin/kernels.hpp"

#include <algorithm>
#include <string>

#include "qdarwin/errors.hpp"

namespace qdarwin {
namespace {

using Offsets = std::vector<Eigen::Index>;

// Flat-index contributions of every joint digit assignment of `indices`,
// enumerated big-endian in the order the indices are listed.
Offsets offsets_of(const SubsystemLayout& layout, std::span<const std::size_t> indices) {
  Offsets out{0};
  for (auto i : indices) {
    const auto d = layout.dim(i);
    const auto s = static_cast<Eigen::Index>(layout.stride(i));
    Offsets next;
    next.reserve(out.size() * d);
    for (auto base : out) {
      for (std::size_t k = 0; k < d; ++k) next.push_back(base + static_cast<Eigen::Index>(k) * s);
    }
    out = std::move(next);
  }
  return out;
}

IndexSet checked_keep(const SubsystemLayout& layout, std::span<const std::size_t> keep) {
  if (keep.empty()) throw DimensionError("partial trace: keep set is empty");
  return normalize_indices(keep, layout.size());
}

// Distinct, in-range, order preserved.
void check_targets(const SubsystemLayout& layout, std::span<const std::size_t> targets) {
  for (std::size_t a = 0; a < targets.size(); ++a) {
    if (targets[a] >= layout.size()) throw DimensionError("target index out of range");
    for (std::size_t b = 0; b < a; ++b) {
      if (targets[a] == targets[b]) throw DimensionError("repeated target index");
    }
  }
}

std::size_t product_dim(const SubsystemLayout& layout, std::span<const std::size_t> indices) {
  std::size_t d = 1;
  for (auto i : indices) d *= layout.dim(i);
  return d;
}

}  // namespace

Ket tensor(const Ket& a, const Ket& b) {
  Vector v(a.amplitudes().size() * b.amplitudes().size());
  const auto nb = b.amplitudes().size();
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  }
  return {std::move(v), a.layout().concat(b.layout()), unchecked};
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return {kron(a.entries(), b.entries()), a.layout().concat(b.layout()), unchecked};
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return {kron(a.entries(), b.entries()), a.layout().concat(b.layout()), unchecked};
}

Matrix partial_trace_matrix(const Matrix& m, const SubsystemLayout& layout,
                            std::span<const std::size_t> keep) {
  if (static_cast<std::size_t>(m.rows()) != layout.total_dim() || m.rows() != m.cols()) {
    throw DimensionError("partial trace: matrix does not match layout " + layout.describe());
  }
  const IndexSet kept = checked_keep(layout, keep);
  const IndexSet traced = layout.complement(kept);
  const Offsets ok = offsets_of(layout, kept);
  const Offsets ot = offsets_of(layout, traced);
  const auto dk = static_cast<Eigen::Index>(ok.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index c = 0; c < dk; ++c) {
    for (Eigen::Index r = 0; r < dk; ++r) {
      Complex acc{0.0, 0.0};
      for (auto t : ot) acc += m(ok[r] + t, ok[c] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  Matrix m = partial_trace_matrix(rho.entries(), rho.layout(), keep);
  return {hermitian_part(m), rho.layout().select(keep), unchecked};
}

DensityMatrix partial_trace(const Ket& psi, std::span<const std::size_t> keep) {
  const auto& layout = psi.layout();
  const IndexSet kept = checked_keep(layout, keep);
  const Offsets ok = offsets_of(layout, kept);
  const Offsets ot = offsets_of(layout, layout.complement(kept));
  const auto dk = static_cast<Eigen::Index>(ok.size());
  const auto dt = static_cast<Eigen::Index>(ot.size());
  Matrix a(dk, dt);
  for (Eigen::Index t = 0; t < dt; ++t) {
    for (Eigen::Index r = 0; r < dk; ++r) a(r, t) = psi.amplitudes()(ok[r] + ot[t]);
  }
  Matrix rho = a * a.adjoint();
  return {hermitian_part(rho), layout.select(kept), unchecked};
}

Matrix partial_transpose_matrix(const Matrix& m, const SubsystemLayout& layout,
                                std::span<const std::size_t> part) {
  if (static_cast<std::size_t>(m.rows()) != layout.total_dim() || m.rows() != m.cols()) {
    throw DimensionError("partial transpose: matrix does not match layout " + layout.describe());
  }
  const IndexSet p = normalize_indices(part, layout.size());
  const Offsets op = offsets_of(layout, p);
  const Offsets orest = offsets_of(layout, layout.complement(p));
  Matrix out(m.rows(), m.cols());
  for (auto b : orest) {
    for (auto a : orest) {
      for (auto q : op) {
        for (auto pp : op) out(a + pp, b + q) = m(a + q, b + pp);
      }
    }
  }
  return out;
}

HermitianOperator partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> part) {
  return {partial_transpose_matrix(rho.entries(), rho.layout(), part), rho.layout(), unchecked};
}

void apply_local_inplace(Vector& amplitudes, const SubsystemLayout& layout, const Matrix& op,
                         std::span<const std::size_t> targets) {
  check_targets(layout, targets);
  const auto dt = static_cast<Eigen::Index>(product_dim(layout, targets));
  if (op.rows() != dt || op.cols() != dt) throw DimensionError("local operator: dimension mismatch");
  if (static_cast<std::size_t>(amplitudes.size()) != layout.total_dim()) {
    throw DimensionError("local operator: vector does not match layout");
  }
  IndexSet sorted(targets.begin(), targets.end());
  const Offsets toff = offsets_of(layout, targets);
  const Offsets rest = offsets_of(layout, layout.complement(sorted));
  Vector buf(dt);
  for (auto base : rest) {
    for (Eigen::Index k = 0; k < dt; ++k) buf(k) = amplitudes(base + toff[k]);
    Vector res = op * buf;
    for (Eigen::Index k = 0; k < dt; ++k) amplitudes(base + toff[k]) = res(k);
  }
}

Ket apply_local(const Ket& psi, const Matrix& op, std::span<const std::size_t> targets) {
  Vector v = psi.amplitudes();
  apply_local_inplace(v, psi.layout(), op, targets);
  return {std::move(v), psi.layout(), unchecked};
}

Matrix embed_operator(const Matrix& op, const SubsystemLayout& layout,
                      std::span<const std::size_t> targets) {
  check_targets(layout, targets);
  const auto dt = static_cast<Eigen::Index>(product_dim(layout, targets));
  if (op.rows() != dt || op.cols() != dt) throw DimensionError("embed: operator dimension mismatch");
  IndexSet sorted(targets.begin(), targets.end());
  const Offsets toff = offsets_of(layout, targets);
  const Offsets rest = offsets_of(layout, layout.complement(sorted));
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  Matrix out = Matrix::Zero(d, d);
  for (auto base : rest) {
    for (Eigen::Index b = 0; b < dt; ++b) {
      for (Eigen::Index a = 0; a < dt; ++a) out(base + toff[a], base + toff[b]) = op(a, b);
    }
  }
  return out;
}

}  // namespace qdarwin
