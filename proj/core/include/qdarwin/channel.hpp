#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qdarwin/layout.hpp"
#include "qdarwin/povm.hpp"
#include "qdarwin/state.hpp"

namespace qdarwin {

/// Normalized Choi state (id ⊗ Λ)(|Φ><Φ|), |Φ> = Σ_i |ii> / sqrt(d_in), laid out
/// as (input copy ⊗ output). Input-copy labels carry an "in:" prefix.
class ChoiMatrix {
 public:
  /// Validates PSD, unit trace, and input marginal I/d_in.
  ChoiMatrix(DensityMatrix state, std::size_t in_dim, std::size_t out_dim, double tol = kDefaultTol);
  ChoiMatrix(DensityMatrix state, std::size_t in_dim, std::size_t out_dim, Unchecked);

  const DensityMatrix& state() const noexcept { return state_; }
  std::size_t in_dim() const noexcept { return in_dim_; }
  std::size_t out_dim() const noexcept { return out_dim_; }
  /// Subsystem indices of the input copy inside state().layout().
  IndexSet input_part() const;

 private:
  DensityMatrix state_;
  std::size_t in_dim_;
  std::size_t out_dim_;
};

// Completely positive map in operator-sum form. Each operator is
// out_dim x in_dim. Copies share the lazily computed Choi matrix.
class KrausChannel {
 public:
  /// Checks shapes and trace preservation (Σ K^dagger K = I within tol).
  static KrausChannel from_operators(std::vector<Matrix> operators, SubsystemLayout in_layout,
                                     SubsystemLayout out_layout, double tol = kDefaultTol);
  /// Shape checks only; use validate_cptp() to inspect the result.
  static KrausChannel unchecked(std::vector<Matrix> operators, SubsystemLayout in_layout,
                                SubsystemLayout out_layout);

  const std::vector<Matrix>& operators() const noexcept { return operators_; }
  const SubsystemLayout& in_layout() const noexcept { return in_layout_; }
  const SubsystemLayout& out_layout() const noexcept { return out_layout_; }
  std::size_t in_dim() const noexcept { return in_layout_.total_dim(); }
  std::size_t out_dim() const noexcept { return out_layout_.total_dim(); }
  std::size_t rank() const noexcept { return operators_.size(); }

  /// Computed once per channel value; thread-safe.
  const ChoiMatrix& choi() const;

 private:
  struct ChoiCache;
  KrausChannel(std::vector<Matrix> operators, SubsystemLayout in_layout, SubsystemLayout out_layout);

  std::vector<Matrix> operators_;
  SubsystemLayout in_layout_;
  SubsystemLayout out_layout_;
  std::shared_ptr<ChoiCache> cache_;
};

struct CptpReport {
  double tp_deviation = 0.0;         // max |Σ K^dagger K - I| entrywise
  double min_choi_eigenvalue = 0.0;  // of the normalized Choi state
  double tol = kDefaultTol;

  bool passed() const { return tp_deviation <= tol && min_choi_eigenvalue >= -tol; }
  std::string summary() const;
};

/// Single-Kraus channel rho -> U rho U^dagger. Throws InvariantViolation if u is not unitary.
KrausChannel unitary_channel(const Matrix& u, SubsystemLayout layout, double tol = kDefaultTol);
KrausChannel unitary_channel(const Matrix& u, SubsystemLayout in_layout, SubsystemLayout out_layout,
                             double tol = kDefaultTol);
/// Single-Kraus channel from an isometry V (V^dagger V = I), e.g. U (I ⊗ |0...0>).
KrausChannel isometry_channel(const Matrix& v, SubsystemLayout in_layout, SubsystemLayout out_layout,
                              double tol = kDefaultTol);

KrausChannel identity_channel(const SubsystemLayout& layout);
/// Every input goes to I/d. For a qubit the Kraus set is the four Paulis / 2.
KrausChannel fully_depolarizing_channel(const SubsystemLayout& layout);
/// Every input goes to tau.
KrausChannel constant_channel(const SubsystemLayout& in_layout, const DensityMatrix& tau);

/// Σ K rho K^dagger.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// f ∘ g: g acts first. Kraus set is every product F_i G_j.
KrausChannel compose(const KrausChannel& f, const KrausChannel& g);
/// Kraus set is every F_i ⊗ G_j.
KrausChannel tensor_channels(const KrausChannel& f, const KrausChannel& g);

CptpReport validate_cptp(const KrausChannel& ch, double tol = kDefaultTol);

ChoiMatrix choi_of(const KrausChannel& ch);
/// Kraus operators from the Choi spectrum: K = sqrt(lambda d_in) unvec(v).
KrausChannel kraus_from_choi(const ChoiMatrix& choi, SubsystemLayout in_layout,
                             SubsystemLayout out_layout);
/// Same channel with at most d_in * d_out Kraus operators.
KrausChannel compress(const KrausChannel& ch);

/// Tr over every subsystem not in `keep`, as a channel.
KrausChannel partial_trace_channel(const SubsystemLayout& layout, std::span<const std::size_t> keep);

/// Tr_{\keep} ∘ global.
KrausChannel restrict_to(const KrausChannel& global, std::span<const std::size_t> keep);
/// Channel from the input to output subsystem `fragment` alone.
KrausChannel restrict_to_fragment(const KrausChannel& global, std::size_t fragment);

/// POVM {M_k} plus one prepared state per outcome.
class MeasureAndPrepareSpec {
 public:
  MeasureAndPrepareSpec(Povm povm, std::vector<DensityMatrix> prepared, std::string fragment_label = {});

  const Povm& povm() const noexcept { return povm_; }
  const std::vector<DensityMatrix>& prepared() const noexcept { return prepared_; }
  const std::string& fragment_label() const noexcept { return fragment_label_; }

 private:
  Povm povm_;
  std::vector<DensityMatrix> prepared_;
  std::string fragment_label_;
};

/// rho -> Σ_k Tr(M_k rho) sigma_k. Kraus operators are
/// sqrt(mu_a s_b) |s_b><m_a| over the spectral decompositions of M_k and sigma_k.
KrausChannel measure_and_prepare(const MeasureAndPrepareSpec& spec);

/// Trace distance between normalized Choi states. Bounds the diamond distance:
///   choi_distance <= diamond_distance <= in_dim * choi_distance.
double choi_trace_distance(const KrausChannel& a, const KrausChannel& b);

/// Negativity of the Choi state across the input | output cut.
double eb_negativity(const KrausChannel& ch);

struct EbWitness {
  double negativity = 0.0;
  /// PPT is equivalent to separability here (d_in * d_out <= 6); otherwise
  /// zero negativity is necessary but not sufficient for entanglement breaking.
  bool exact = false;
};
EbWitness eb_witness(const KrausChannel& ch);

}  // namespace qdarwin
