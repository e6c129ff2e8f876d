#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qdarwin;

namespace {

DensityMatrix spam_state(std::size_t n, const Ket& input) {
  return apply(spam_interaction(n), DensityMatrix::pure(input));
}

std::vector<double> means(const InfoCurve& c) {
  std::vector<double> out;
  for (const auto& p : c.points) out.push_back(p.mean_bits);
  return out;
}

bool is_pole(const Eigen::Vector3d& v) { return std::abs(std::abs(v.z()) - 1.0) < 1e-15; }

}  // namespace

TEST(InfoCurve, SpamPlateau) {
  const auto curve = fragment_information_curve(spam_state(4, qubit::plus()), 0);
  ASSERT_EQ(curve.points.size(), 5u);
  EXPECT_EQ(curve.fragments, 4u);
  EXPECT_NEAR(curve.system_entropy, 1.0, 1e-12);
  const double expected[] = {0.0, 1.0, 1.0, 1.0, 2.0};
  for (std::size_t m = 0; m <= 4; ++m) {
    EXPECT_EQ(curve.points[m].m, m);
    EXPECT_NEAR(curve.points[m].mean_bits, expected[m], 1e-10);
    EXPECT_TRUE(curve.points[m].exhaustive);
  }
  EXPECT_EQ(curve.points[2].samples, 6u);
}

TEST(InfoCurve, SpamSingleFragmentByDirectEntropies) {
  // I(S : E2) from eigenvalues of explicitly traced marginals of (S, E1, E2).
  const double s = std::numbers::sqrt2 / 2.0;
  const Vector psi = oracle::ghz_like(3, s, s);
  const Matrix rho = psi * psi.adjoint();
  const auto entropy = [](const Matrix& m) {
    return entropy_of_spectrum(Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues());
  };
  const Matrix se = oracle::trace_middle(rho, 2, 2, 2);
  const double mi = entropy(oracle::trace_middle(se, 2, 2, 1)) + entropy(oracle::trace_middle(se, 1, 2, 2)) - entropy(se);
  EXPECT_NEAR(mi, 1.0, 1e-12);
  const auto curve = fragment_information_curve(spam_state(2, qubit::plus()), 0);
  EXPECT_NEAR(curve.points[1].mean_bits, mi, 1e-12);
}

TEST(InfoCurve, ZeroWithoutCorrelations) {
  const auto product = tensor(DensityMatrix::pure(qubit::plus()),
                              DensityMatrix::pure(Ket::basis(SubsystemLayout::qubits(3, "E"), 0)));
  for (double v : means(fragment_information_curve(product, 0))) EXPECT_NEAR(v, 0.0, 1e-10);
  for (double v : means(fragment_information_curve(spam_state(3, qubit::up()), 0))) EXPECT_NEAR(v, 0.0, 1e-10);
  EXPECT_THROW(fragment_information_curve(product, 4), DimensionError);
  EXPECT_THROW(fragment_information_curve(DensityMatrix::pure(qubit::up()), 0), DimensionError);
}

TEST(InfoCurve, MonotoneWithPureEndpoint) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    const auto global = apply(random_interaction(4, 2, seed), DensityMatrix::pure(random_ket(SubsystemLayout::qubits(1), rng)));
    const auto curve = fragment_information_curve(global, 0);
    EXPECT_NEAR(curve.points.front().mean_bits, 0.0, 1e-10);
    for (std::size_t m = 1; m < curve.points.size(); ++m) {
      EXPECT_GE(curve.points[m].mean_bits, curve.points[m - 1].mean_bits - 1e-10);
    }
    EXPECT_NEAR(curve.points.back().mean_bits, 2.0 * curve.system_entropy, 1e-9);
  }
}

TEST(InfoCurve, SamplingIsSeededAndCapped) {
  const auto global = spam_state(8, qubit::plus());
  SamplingPolicy policy{.cap = 10, .seed = 3};
  const auto a = fragment_information_curve(global, 0, policy);
  const auto b = fragment_information_curve(global, 0, policy);
  EXPECT_EQ(means(a), means(b));
  EXPECT_FALSE(a.points[4].exhaustive);  // C(8,4) = 70 > 10
  EXPECT_EQ(a.points[4].samples, 10u);
  EXPECT_TRUE(a.points[1].exhaustive);   // C(8,1) = 8
  EXPECT_NEAR(a.points[4].mean_bits, 1.0, 1e-10);
}

TEST(Redundancy, Examples) {
  const auto curve = fragment_information_curve(spam_state(8, qubit::plus()), 0);
  EXPECT_NEAR(redundancy(curve, 0.1), 8.0, 1e-12);

  InfoCurve zeros;
  zeros.fragments = 3;
  zeros.system_entropy = 1.0;
  for (std::size_t m = 0; m <= 3; ++m) zeros.points.push_back({.m = m});
  EXPECT_THROW(redundancy(zeros, 0.1), ArgumentError);

  InfoCurve late = zeros;
  late.points[1].mean_bits = 0.2;
  late.points[2].mean_bits = 0.5;
  late.points[3].mean_bits = 1.0;
  EXPECT_NEAR(redundancy(late, 0.1), 1.0, 1e-15);

  InfoCurve flat = late;
  flat.system_entropy = 0.0;
  EXPECT_THROW(redundancy(flat, 0.1), ArgumentError);
  EXPECT_THROW(redundancy(late, 0.0), ArgumentError);
  EXPECT_THROW(redundancy(late, 1.0), ArgumentError);
}

TEST(FibonacciSphere, ContainsPolesAndUnitVectors) {
  for (std::size_t count : {8u, 33u, 64u}) {
    const auto pts = fibonacci_sphere(count);
    ASSERT_EQ(pts.size(), count);
    EXPECT_EQ(pts.front().z(), 1.0);
    EXPECT_EQ(pts.back().z(), -1.0);
    for (const auto& p : pts) EXPECT_NEAR(p.norm(), 1.0, 1e-14);
  }
}

TEST(PointerSieve, SpamSelectsZBasis) {
  const auto spam = spam_interaction(3);
  for (std::size_t res : {32u, 50u, 64u, 101u}) {
    const auto sieve = pointer_sieve(spam, res);
    EXPECT_NEAR(sieve.max_purity, 1.0, 1e-12);
    ASSERT_EQ(sieve.argmax.size(), 2u) << res;
    for (std::size_t i : sieve.argmax) EXPECT_TRUE(is_pole(sieve.points[i].bloch));
  }
  EXPECT_NEAR(post_channel_system_purity(spam, qubit::plus()), 0.5, 1e-12);
}

TEST(PointerSieve, IdentityIsFlat) {
  const auto sieve = pointer_sieve(identity_channel(SubsystemLayout::qubits(1)), 20);
  for (const auto& p : sieve.points) EXPECT_NEAR(p.purity, 1.0, 1e-12);
  EXPECT_EQ(sieve.argmax.size(), 20u);
}

TEST(PointerSieve, PartialRecordEquatorPurity) {
  const auto ch = partial_record_interaction(1, std::numbers::pi / 2);
  const auto sieve = pointer_sieve(ch, 65);  // z = 0 lies on this grid
  ASSERT_EQ(sieve.argmax.size(), 2u);
  for (std::size_t i : sieve.argmax) EXPECT_TRUE(is_pole(sieve.points[i].bloch));
  double lowest = 1.0;
  for (const auto& p : sieve.points) {
    // 1/2 (1 + z^2 + (1 - z^2) c^2), c = cos(pi/4)
    const double z = p.bloch.z();
    EXPECT_NEAR(p.purity, 0.5 * (1 + z * z + 0.5 * (1 - z * z)), 1e-12);
    lowest = std::min(lowest, p.purity);
  }
  EXPECT_NEAR(lowest, 0.75, 1e-12);
}

TEST(PointerSieve, Errors) {
  EXPECT_THROW(pointer_sieve(spam_interaction(1), 7), ArgumentError);
  EXPECT_THROW(pointer_sieve(identity_channel(SubsystemLayout::single(3, "t")), 16), ArgumentError);
}

TEST(MpFit, SpamFragmentIsExact) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto fit = mp_fit(restrict_to_fragment(spam_interaction(n), n), 32);
    EXPECT_LT(fit.distance, 1e-9);
    ASSERT_TRUE(fit.axis.has_value());
    EXPECT_NEAR(std::abs(fit.axis->z()), 1.0, 1e-9);
    EXPECT_NEAR(fit.sigma_fidelity, 0.0, 1e-9);
  }
}

TEST(MpFit, IdentityIsFar) {
  const auto id = identity_channel(SubsystemLayout::qubits(1));
  const auto fit = mp_fit(id, 64);
  EXPECT_GE(fit.distance, 0.25);
  EXPECT_NEAR(eb_negativity(id), 0.5, 1e-12);
}

TEST(MpFit, ConstantChannelUsesTrivialPovm) {
  Rng rng(41);
  const auto tau = random_density(SubsystemLayout::qubits(1), rng);
  const auto fit = mp_fit(constant_channel(SubsystemLayout::qubits(1), tau), 16);
  EXPECT_LT(fit.distance, 1e-12);
  EXPECT_FALSE(fit.axis.has_value());
  EXPECT_EQ(fit.spec.povm().size(), 1u);
}

TEST(MpFit, ZeroDistanceImpliesZeroNegativity) {
  Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = haar_unitary(2, rng);
    const auto q = SubsystemLayout::qubits(1);
    const MeasureAndPrepareSpec spec(Povm::projective({Ket(u.col(0), q, 1e-9), Ket(u.col(1), q, 1e-9)}, 1e-9),
                                     {random_density(q, rng), random_density(q, rng)});
    const auto ch = measure_and_prepare(spec);
    const auto fit = mp_fit(ch, 64);
    EXPECT_LT(fit.distance, 1e-6) << trial;
    if (fit.distance < 1e-9) EXPECT_LT(eb_negativity(ch), 1e-9);
    // The fitted channel is itself measure-and-prepare.
    EXPECT_LT(eb_negativity(measure_and_prepare(fit.spec)), 1e-9);
  }
}

TEST(EmergenceScan, DeterministicAcrossThreadCounts) {
  EmergenceConfig cfg;
  cfg.n_max = 3;
  cfg.seeds_per_n = 4;
  cfg.fit_resolution = 16;
  const auto serial = emergence_scan(cfg);
  cfg.threads = 3;
  const auto parallel = emergence_scan(cfg);
  ASSERT_EQ(serial.rows.size(), 4u * (1 + 2 + 3));
  ASSERT_EQ(parallel.rows.size(), serial.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    const auto& a = serial.rows[i];
    const auto& b = parallel.rows[i];
    EXPECT_EQ(a.n, b.n);
    EXPECT_EQ(a.seed_index, b.seed_index);
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_EQ(a.fragment, b.fragment);
    EXPECT_EQ(a.negativity, b.negativity);
    EXPECT_EQ(a.mp_distance, b.mp_distance);
    EXPECT_EQ(a.sigma_fidelity, b.sigma_fidelity);
  }
  ASSERT_EQ(serial.summaries.size(), 3u);
  EXPECT_EQ(serial.summaries[2].rows, 12u);
  for (const auto& row : serial.rows) {
    EXPECT_GE(row.negativity, 0.0);
    EXPECT_GE(row.mp_distance, 0.0);
    EXPECT_LE(row.mp_distance, 1.0);
    EXPECT_EQ(row.seed, emergence_seed(cfg.master_seed, row.n, row.seed_index));
  }
}

TEST(EmergenceScan, SingleFragmentUsuallyEntangled) {
  EmergenceConfig cfg;
  cfg.n_max = 1;
  cfg.seeds_per_n = 10;
  cfg.fit_resolution = 16;
  const auto scan = emergence_scan(cfg);
  EXPECT_GT(scan.summaries.front().median_negativity, 0.0);
}

TEST(EmergenceScan, SpamFamilyIsMeasureAndPrepare) {
  EmergenceConfig cfg;
  cfg.family = InteractionFamily::spam;
  cfg.n_max = 4;
  cfg.fit_resolution = 16;
  const auto scan = emergence_scan(cfg);
  EXPECT_EQ(scan.rows.size(), 1u + 2 + 3 + 4);
  for (const auto& row : scan.rows) {
    EXPECT_LT(row.negativity, 1e-9);
    EXPECT_LT(row.mp_distance, 1e-9);
  }
}

TEST(EmergenceScan, RespectsBudget) {
  EmergenceConfig cfg;
  cfg.n_max = 12;
  cfg.seeds_per_n = 1;
  EXPECT_THROW(emergence_scan(cfg), BudgetExceeded);
}

TEST(Median, Examples) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_THROW(median({}), ArgumentError);
}
