#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qdarwin/channel.hpp"
#include "qdarwin/layout.hpp"
#include "qdarwin/state.hpp"

namespace qdarwin {

// ---------------------------------------------------------------------------
// Fragment information curves

struct SamplingPolicy {
  /// Subsets of a given size are enumerated when there are at most `cap` of
  /// them, otherwise `cap` uniform samples are drawn.
  std::size_t cap = 200;
  std::uint64_t seed = 0;
};

struct InfoPoint {
  std::size_t m = 0;          // fragment subset size
  double mean_bits = 0.0;     // mean I(system : subset)
  double std_error = 0.0;     // zero when enumerated exhaustively
  std::size_t samples = 0;
  bool exhaustive = true;
};

struct InfoCurve {
  std::vector<InfoPoint> points;  // m = 0..n
  double system_entropy = 0.0;    // bits
  std::size_t fragments = 0;      // n
};

/// Mean mutual information between subsystem `system` and size-m subsets of
/// the remaining subsystems, for m = 0..n.
InfoCurve fragment_information_curve(const DensityMatrix& global_state, std::size_t system,
                                     const SamplingPolicy& policy = {});

/// R_delta = n / m_delta, m_delta the smallest m with I(m) >= (1 - delta) S(system).
/// Throws ArgumentError when the curve never reaches the threshold or S(system) = 0.
double redundancy(const InfoCurve& curve, double delta);

// ---------------------------------------------------------------------------
// Pointer sieve

/// Bloch-sphere grid of `count` points with z_i = 1 - 2i/(count-1) and a
/// golden-angle azimuth. Both poles are always grid points.
std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t count);

struct SievePoint {
  Eigen::Vector3d bloch;
  double purity = 0.0;  // of output subsystem 0 after the channel
};

struct SieveResult {
  std::vector<SievePoint> points;
  IndexSet argmax;  // every point within 1e-9 of the maximum purity
  double max_purity = 0.0;
};

/// Purity of the system marginal (output subsystem 0) after `ch`, over pure
/// qubit inputs on a Fibonacci grid. Throws ArgumentError unless the input is a
/// qubit and resolution >= 8.
SieveResult pointer_sieve(const KrausChannel& ch, std::size_t resolution);

/// Same quantity for a single input state.
double post_channel_system_purity(const KrausChannel& ch, const Ket& input);

// ---------------------------------------------------------------------------
// Measure-and-prepare fitting

struct MpFit {
  MeasureAndPrepareSpec spec;
  double distance = 0.0;                 // Choi trace distance to the fitted channel
  std::optional<Eigen::Vector3d> axis;   // Bloch axis of the projective basis; empty for {I}
  double sigma_fidelity = 1.0;           // fidelity between the two prepared states
};

/// Best measure-and-prepare approximation of a qubit -> qubit channel over
/// projective bases on a Bloch grid (plus the single-outcome POVM), with
/// prepared states sigma_k = lambda(M_k), refined by one golden-section pass
/// in each spherical angle.
MpFit mp_fit(const KrausChannel& lambda, std::size_t resolution = 64);

// ---------------------------------------------------------------------------
// Generic-emergence scan

enum class InteractionFamily { random, spam };

struct EmergenceConfig {
  InteractionFamily family = InteractionFamily::random;
  std::size_t depth = 2;
  std::size_t n_min = 1;
  std::size_t n_max = 6;
  std::size_t seeds_per_n = 100;
  std::uint64_t master_seed = 42;
  std::size_t fit_resolution = 64;
  std::size_t threads = 1;
  DimensionBudget budget{};
};

struct EmergenceRow {
  std::size_t n = 0;
  std::size_t seed_index = 0;
  std::uint64_t seed = 0;
  std::size_t fragment = 0;  // output subsystem index, 1..n
  double negativity = 0.0;
  bool negativity_exact = true;
  double mp_distance = 0.0;
  double sigma_fidelity = 1.0;
};

struct EmergenceSummary {
  std::size_t n = 0;
  std::size_t rows = 0;
  double median_negativity = 0.0;
  double max_negativity = 0.0;
  double median_mp_distance = 0.0;
  double max_mp_distance = 0.0;
};

struct EmergenceScan {
  std::vector<EmergenceRow> rows;  // ordered by (n, seed_index, fragment)
  std::vector<EmergenceSummary> summaries;
};

/// Seed of the interaction drawn for (n, seed_index); independent of schedule.
std::uint64_t emergence_seed(std::uint64_t master, std::size_t n, std::size_t seed_index);

EmergenceScan emergence_scan(const EmergenceConfig& config);

double median(std::vector<double> values);

}  // namespace qdarwin
