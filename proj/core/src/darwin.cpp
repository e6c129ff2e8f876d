#include "qdarwin/darwin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "qdarwin/errors.hpp"
#include "qdarwin/information.hpp"
#include "qdarwin/kernels.hpp"
#include "qdarwin/models.hpp"
#include "qdarwin/random.hpp"

namespace qdarwin {
namespace {

// C(n, m), saturating at limit + 1.
std::size_t binomial_capped(std::size_t n, std::size_t m, std::size_t limit) {
  if (m > n) return 0;
  m = std::min(m, n - m);
  std::size_t c = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    c = c * (n - m + i) / i;
    if (c > limit) return limit + 1;
  }
  return c;
}

bool next_combination(IndexSet& idx, std::size_t n) {
  const std::size_t m = idx.size();
  for (std::size_t i = m; i-- > 0;) {
    if (idx[i] < n - m + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

IndexSet sample_subset(std::size_t n, std::size_t m, Rng& rng) {
  IndexSet pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

Matrix pauli_axis(const Eigen::Vector3d& axis) {
  return axis.x() * qubit::pauli_x() + axis.y() * qubit::pauli_y() + axis.z() * qubit::pauli_z();
}

Eigen::Vector3d spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Evaluates measure-and-prepare candidates against one fixed channel.
class MpObjective {
 public:
  explicit MpObjective(const KrausChannel& lambda)
      : lambda_(lambda), target_(lambda.choi().state().entries()) {}

  // Choi of rho -> Σ_k Tr(P_k rho) lambda(P_k) is (1/2) Σ_k P_k^T ⊗ lambda(P_k).
  double projective(const Eigen::Vector3d& axis) const {
    const Matrix n = pauli_axis(axis);
    const Matrix id = Matrix::Identity(2, 2);
    Matrix j = Matrix::Zero(4, 4);
    for (double sign : {1.0, -1.0}) {
      const Matrix p = 0.5 * (id + sign * n);
      j += 0.5 * kron(p.transpose(), image(p));
    }
    return trace_distance(j, target_);
  }

  double trivial() const {
    const Matrix id = Matrix::Identity(2, 2);
    return trace_distance(kron(0.5 * id, image(0.5 * id)), target_);
  }

  Matrix image(const Matrix& x) const {
    Matrix out = Matrix::Zero(2, 2);
    for (const auto& k : lambda_.operators()) out += k * x * k.adjoint();
    return out;
  }

 private:
  const KrausChannel& lambda_;
  const Matrix& target_;
};

template <typename F>
double golden_section(F&& f, double lo, double hi, int iterations) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

DensityMatrix as_state(const Matrix& m, const SubsystemLayout& layout) {
  return {hermitian_part(m), layout, unchecked};
}

std::vector<EmergenceRow> scan_item(const EmergenceConfig& cfg, std::size_t n, std::size_t seed_index) {
  const std::uint64_t seed = emergence_seed(cfg.master_seed, n, seed_index);
  const KrausChannel global = cfg.family == InteractionFamily::spam
                                  ? spam_interaction(n, cfg.budget)
                                  : random_interaction(n, cfg.depth, seed, cfg.budget);
  std::vector<EmergenceRow> rows;
  for (std::size_t j = 1; j <= n; ++j) {
    const KrausChannel lambda_j = restrict_to_fragment(global, j);
    const EbWitness eb = eb_witness(lambda_j);
    const MpFit fit = mp_fit(lambda_j, cfg.fit_resolution);
    rows.push_back({n, seed_index, seed, j, eb.negativity, eb.exact, fit.distance, fit.sigma_fidelity});
  }
  return rows;
}

}  // namespace

InfoCurve fragment_information_curve(const DensityMatrix& global_state, std::size_t system,
                                     const SamplingPolicy& policy) {
  const auto& layout = global_state.layout();
  if (layout.size() < 2) throw DimensionError("information curve: need a system and at least one fragment");
  if (system >= layout.size()) throw DimensionError("information curve: system index out of range");
  if (policy.cap == 0) throw ArgumentError("information curve: sampling cap must be positive");
  const IndexSet sys = {system};
  const IndexSet env = layout.complement(sys);
  const std::size_t n = env.size();

  InfoCurve curve;
  curve.fragments = n;
  curve.system_entropy = von_neumann_entropy(partial_trace(global_state, sys));
  curve.points.push_back({0, 0.0, 0.0, 1, true});

  Rng rng(policy.seed);
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<IndexSet> subsets;
    const std::size_t count = binomial_capped(n, m, policy.cap);
    const bool exhaustive = count <= policy.cap;
    if (exhaustive) {
      IndexSet idx(m);
      for (std::size_t i = 0; i < m; ++i) idx[i] = i;
      do subsets.push_back(idx);
      while (next_combination(idx, n));
    } else {
      for (std::size_t s = 0; s < policy.cap; ++s) subsets.push_back(sample_subset(n, m, rng));
    }
    std::vector<double> values;
    values.reserve(subsets.size());
    for (const auto& local : subsets) {
      IndexSet keep = {system};
      for (auto i : local) keep.push_back(env[i]);
      std::sort(keep.begin(), keep.end());
      const DensityMatrix reduced = partial_trace(global_state, keep);
      const std::size_t sys_pos =
          static_cast<std::size_t>(std::find(keep.begin(), keep.end(), system) - keep.begin());
      const IndexSet part_a = {sys_pos};
      const IndexSet part_b = reduced.layout().complement(part_a);
      values.push_back(mutual_information(reduced, part_a, part_b));
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double se = 0.0;
    if (!exhaustive && values.size() > 1) {
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      var /= static_cast<double>(values.size() - 1);
      se = std::sqrt(var / static_cast<double>(values.size()));
    }
    curve.points.push_back({m, mean, se, values.size(), exhaustive});
  }
  return curve;
}

double redundancy(const InfoCurve& curve, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("redundancy: delta must lie in (0, 1)");
  if (curve.system_entropy <= kEigenClamp) throw ArgumentError("redundancy: system entropy is zero");
  const double threshold = (1.0 - delta) * curve.system_entropy;
  for (const auto& p : curve.points) {
    if (p.m > 0 && p.mean_bits >= threshold) {
      return static_cast<double>(curve.fragments) / static_cast<double>(p.m);
    }
  }
  throw ArgumentError("redundancy: information never reaches (1 - delta) of the system entropy");
}

std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t count) {
  if (count < 2) throw ArgumentError("fibonacci sphere: need at least two points");
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double z = 1.0 - 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
    if (i == 0) z = 1.0;
    if (i == count - 1) z = -1.0;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

double post_channel_system_purity(const KrausChannel& ch, const Ket& input) {
  const IndexSet sys = {0};
  return purity(partial_trace(apply(ch, DensityMatrix::pure(input)), sys));
}

SieveResult pointer_sieve(const KrausChannel& ch, std::size_t resolution) {
  if (ch.in_dim() != 2) throw ArgumentError("pointer sieve: system must be a qubit");
  if (resolution < 8) throw ArgumentError("pointer sieve: resolution must be at least 8");
  SieveResult result;
  for (const auto& b : fibonacci_sphere(resolution)) {
    const Ket psi(qubit::from_bloch(b.x(), b.y(), b.z()).amplitudes(), ch.in_layout(), unchecked);
    result.points.push_back({b, post_channel_system_purity(ch, psi)});
  }
  result.max_purity = 0.0;
  for (const auto& p : result.points) result.max_purity = std::max(result.max_purity, p.purity);
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    if (result.points[i].purity >= result.max_purity - 1e-9) result.argmax.push_back(i);
  }
  return result;
}

MpFit mp_fit(const KrausChannel& lambda, std::size_t resolution) {
  if (lambda.in_dim() != 2 || lambda.out_dim() != 2) throw ArgumentError("mp_fit: channel must be qubit -> qubit");
  const MpObjective objective(lambda);

  double best = objective.trivial();
  std::optional<Eigen::Vector3d> best_axis;
  const std::size_t grid = std::max<std::size_t>(resolution, 8);
  for (const auto& axis : fibonacci_sphere(grid)) {
    const double d = objective.projective(axis);
    if (d < best - 1e-12) {
      best = d;
      best_axis = axis;
    }
  }

  if (best_axis) {
    // Alternating golden-section passes in theta and phi; the bracket halves
    // after each pass because the two angles are coupled away from the poles.
    double step = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(grid));
    double theta = std::acos(std::clamp(best_axis->z(), -1.0, 1.0));
    double phi = std::atan2(best_axis->y(), best_axis->x());
    for (int pass = 0; pass < 6; ++pass, step *= 0.5) {
      theta = golden_section([&](double t) { return objective.projective(spherical(t, phi)); },
                             theta - step, theta + step, 40);
      phi = golden_section([&](double p) { return objective.projective(spherical(theta, p)); },
                           phi - step, phi + step, 40);
    }
    const Eigen::Vector3d refined = spherical(theta, phi);
    if (objective.projective(refined) < best - 1e-12) best_axis = refined;
  }

  const SubsystemLayout& in = lambda.in_layout();
  const SubsystemLayout& out = lambda.out_layout();
  const std::string label = out.label(0);
  const Matrix id = Matrix::Identity(2, 2);
  if (!best_axis) {
    MeasureAndPrepareSpec spec(Povm::trivial(in), {as_state(objective.image(0.5 * id), out)}, label);
    const double distance = choi_trace_distance(measure_and_prepare(spec), lambda);
    return {std::move(spec), distance, std::nullopt, 1.0};
  }
  const Matrix n = pauli_axis(*best_axis);
  std::vector<HermitianOperator> elements;
  std::vector<DensityMatrix> prepared;
  for (double sign : {1.0, -1.0}) {
    const Matrix p = 0.5 * (id + sign * n);
    elements.emplace_back(hermitian_part(p), in, unchecked);
    prepared.push_back(as_state(objective.image(p), out));
  }
  const double sigma_fid = fidelity(prepared[0], prepared[1]);
  MeasureAndPrepareSpec spec(Povm(std::move(elements), 1e-9), std::move(prepared), label);
  const double distance = choi_trace_distance(measure_and_prepare(spec), lambda);
  return {std::move(spec), distance, best_axis, sigma_fid};
}

std::uint64_t emergence_seed(std::uint64_t master, std::size_t n, std::size_t seed_index) {
  return derive_seed(master, n, seed_index);
}

double median(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  return values.size() % 2 == 1 ? values[k] : 0.5 * (values[k - 1] + values[k]);
}

EmergenceScan emergence_scan(const EmergenceConfig& cfg) {
  if (cfg.n_min == 0 || cfg.n_min > cfg.n_max) throw ArgumentError("emergence scan: need 1 <= n_min <= n_max");
  if (cfg.seeds_per_n == 0) throw ArgumentError("emergence scan: seeds per n must be positive");
  if (cfg.family == InteractionFamily::random && cfg.depth == 0) throw ArgumentError("emergence scan: depth must be at least 1");
  if (cfg.n_max >= 62) throw BudgetExceeded("emergence scan: n_max too large");
  cfg.budget.check(std::size_t{2} << cfg.n_max, "emergence scan");

  struct Item {
    std::size_t n;
    std::size_t seed_index;
  };
  std::vector<Item> items;
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    const std::size_t seeds = cfg.family == InteractionFamily::spam ? 1 : cfg.seeds_per_n;
    for (std::size_t s = 0; s < seeds; ++s) items.push_back({n, s});
  }

  std::vector<std::vector<EmergenceRow>> results(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        results[i] = scan_item(cfg, items[i].n, items[i].seed_index);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, items.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  EmergenceScan scan;
  for (auto& r : results) scan.rows.insert(scan.rows.end(), r.begin(), r.end());
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    std::vector<double> neg, dist;
    for (const auto& r : scan.rows) {
      if (r.n != n) continue;
      neg.push_back(r.negativity);
      dist.push_back(r.mp_distance);
    }
    EmergenceSummary s;
    s.n = n;
    s.rows = neg.size();
    s.median_negativity = median(neg);
    s.max_negativity = neg.empty() ? 0.0 : *std::max_element(neg.begin(), neg.end());
    s.median_mp_distance = median(dist);
    s.max_mp_distance = dist.empty() ? 0.0 : *std::max_element(dist.begin(), dist.end());
    scan.summaries.push_back(s);
  }
  return scan;
}

}  // namespace qdarwin
