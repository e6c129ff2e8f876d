#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qdarwin;

namespace {

DensityMatrix bell_state() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = std::numbers::sqrt2 / 2.0;
  return DensityMatrix::pure(Ket(v, SubsystemLayout::qubits(2)));
}

DensityMatrix qubit_diag(double p0) {
  const std::vector<double> p = {p0, 1.0 - p0};
  return DensityMatrix::diagonal(p, SubsystemLayout::qubits(1));
}

}  // namespace

TEST(TraceDistance, Examples) {
  const auto zero = DensityMatrix::pure(qubit::up());
  const auto one = DensityMatrix::pure(qubit::down());
  EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(zero, DensityMatrix::maximally_mixed(SubsystemLayout::qubits(1))), 0.5, 1e-15);
  EXPECT_THROW(trace_distance(zero, bell_state()), DimensionError);
}

TEST(TraceDistance, IsAMetricOnRandomTriples) {
  Rng rng(21);
  const auto l = SubsystemLayout::qubits(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_density(l, rng);
    const auto b = random_density(l, rng);
    const auto c = random_density(l, rng, 1);
    EXPECT_EQ(trace_distance(a, b), trace_distance(b, a));
    EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-10);
    EXPECT_GE(trace_distance(a, b), 0.0);
    EXPECT_LE(trace_distance(a, b), 1.0 + 1e-12);
  }
}

TEST(Entropy, Examples) {
  Rng rng(1);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(random_ket(SubsystemLayout::qubits(3), rng))), 0.0, 1e-9);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(SubsystemLayout::qubits(1))), 1.0, 1e-14);
  // H2(1/4), direct evaluation.
  EXPECT_NEAR(oracle::h2(0.25), 0.8112781244591328, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(qubit_diag(0.25)), 0.8112781244591328, 1e-14);
}

TEST(Entropy, AdditiveOnProducts) {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_density(SubsystemLayout::qubits(1 + rng.below(2), "a"), rng);
    const auto b = random_density(SubsystemLayout::single(2 + rng.below(2), "b"), rng);
    EXPECT_NEAR(von_neumann_entropy(tensor(a, b)), von_neumann_entropy(a) + von_neumann_entropy(b), 1e-9);
  }
}

TEST(MutualInformation, Examples) {
  Rng rng(3);
  const auto prod = tensor(random_density(SubsystemLayout::qubits(1, "a"), rng),
                           random_density(SubsystemLayout::qubits(2, "b"), rng));
  EXPECT_NEAR(mutual_information(prod, IndexSet{0}, IndexSet{1, 2}), 0.0, 1e-9);
  EXPECT_NEAR(mutual_information(bell_state(), IndexSet{0}, IndexSet{1}), 2.0, 1e-12);

  // Spam state on system + 4 fragments, system vs one fragment.
  const double s = std::numbers::sqrt2 / 2.0;
  const auto spam = DensityMatrix::pure(Ket(oracle::ghz_like(5, s, s), SubsystemLayout::qubits(5)));
  const auto pair = partial_trace(spam, IndexSet{0, 3});
  EXPECT_NEAR(mutual_information(pair, IndexSet{0}, IndexSet{1}), 1.0, 1e-12);
}

TEST(MutualInformation, RejectsBadPartitions) {
  const auto rho = DensityMatrix::maximally_mixed(SubsystemLayout::qubits(3));
  EXPECT_THROW(mutual_information(rho, IndexSet{0, 1}, IndexSet{1, 2}), DimensionError);
  EXPECT_THROW(mutual_information(rho, IndexSet{0}, IndexSet{1}), DimensionError);
  EXPECT_THROW(mutual_information(rho, IndexSet{}, IndexSet{0, 1, 2}), DimensionError);
}

TEST(MutualInformation, BoundedOnRandomStates) {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    const auto rho = random_density(SubsystemLayout::qubits(n), rng, 1 + rng.below(4));
    const std::size_t cut = 1 + rng.below(n - 1);
    IndexSet a, b;
    for (std::size_t i = 0; i < n; ++i) (i < cut ? a : b).push_back(i);
    const double mi = mutual_information(rho, a, b);
    const double sa = von_neumann_entropy(partial_trace(rho, a));
    const double sb = von_neumann_entropy(partial_trace(rho, b));
    EXPECT_GE(mi, -1e-9);
    EXPECT_LE(mi, 2.0 * std::min(sa, sb) + 1e-9);
  }
}

TEST(Purity, Examples) {
  EXPECT_NEAR(purity(DensityMatrix::pure(qubit::plus())), 1.0, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(SubsystemLayout::qubits(1))), 0.5, 1e-15);
  EXPECT_NEAR(purity(qubit_diag(0.5)), 0.5, 1e-15);
}

TEST(Negativity, Examples) {
  Rng rng(4);
  const auto sep = tensor(random_density(SubsystemLayout::qubits(1, "a"), rng),
                          random_density(SubsystemLayout::qubits(1, "b"), rng));
  EXPECT_NEAR(negativity(sep, IndexSet{0}), 0.0, 1e-12);
  EXPECT_NEAR(negativity(bell_state(), IndexSet{0}), 0.5, 1e-12);
  EXPECT_NEAR(negativity(bell_state(), IndexSet{1}), 0.5, 1e-12);
  EXPECT_NEAR(negativity(DensityMatrix::maximally_mixed(SubsystemLayout::qubits(2)), IndexSet{0}), 0.0, 1e-15);
}

TEST(Negativity, InvariantUnderLocalUnitaries) {
  Rng rng(24);
  const auto l = SubsystemLayout::qubits(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = random_density(l, rng, 1 + rng.below(3));
    const Matrix u = kron(haar_unitary(2, rng), haar_unitary(2, rng));
    const DensityMatrix rotated(u * rho.entries() * u.adjoint(), l, 1e-9);
    EXPECT_NEAR(negativity(rotated, IndexSet{0}), negativity(rho, IndexSet{0}), 1e-9);
  }
}

TEST(Fidelity, Examples) {
  EXPECT_NEAR(fidelity(DensityMatrix::pure(qubit::up()), DensityMatrix::pure(qubit::up())), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(DensityMatrix::pure(qubit::up()), DensityMatrix::pure(qubit::down())), 0.0, 1e-12);
  EXPECT_NEAR(fidelity(DensityMatrix::pure(qubit::up()), DensityMatrix::pure(qubit::plus())), 0.5, 1e-12);
}

TEST(PovmProbabilities, PreferredBasisExamples) {
  const auto updown = Povm::projective({qubit::up(), qubit::down()});
  const auto rightleft = Povm::projective({qubit::right(), qubit::left()});

  auto p = povm_probabilities(DensityMatrix::pure(qubit::from_amplitudes(1.0, 1.0)), updown);
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);

  p = povm_probabilities(DensityMatrix::pure(qubit::right()), rightleft);
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1], 0.0, 1e-15);

  p = povm_probabilities(DensityMatrix::pure(qubit::up()), rightleft);
  EXPECT_NEAR(p[0], 0.5, 1e-15);

  // Fragment mixture in the {+,-} basis.
  p = povm_probabilities(qubit_diag(0.5), Povm::projective({qubit::plus(), qubit::minus()}));
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);

  EXPECT_THROW(povm_probabilities(bell_state(), updown), DimensionError);
}

TEST(Povm, RejectsInvalidElements) {
  const auto l = SubsystemLayout::qubits(1);
  EXPECT_THROW(Povm({HermitianOperator(Matrix::Identity(2, 2) * 0.5, l)}), InvariantViolation);
  EXPECT_THROW(Povm({HermitianOperator(qubit::pauli_z(), l), HermitianOperator(Matrix::Identity(2, 2) - qubit::pauli_z(), l)}),
               InvariantViolation);
  EXPECT_THROW(Povm(std::vector<HermitianOperator>{}), InvariantViolation);
}

TEST(Povm, ProbabilitiesSumToOneForRandomPovms) {
  Rng rng(25);
  const auto l = SubsystemLayout::qubits(2);
  for (int trial = 0; trial < 20; ++trial) {
    // M_k = U |k><k| U^dagger scaled into a 4-outcome POVM split 50/50 over two bases.
    const Matrix u = haar_unitary(4, rng), w = haar_unitary(4, rng);
    std::vector<HermitianOperator> elems;
    for (Eigen::Index k = 0; k < 4; ++k) {
      elems.emplace_back(hermitian_part(0.5 * u.col(k) * u.col(k).adjoint()), l);
      elems.emplace_back(hermitian_part(0.5 * w.col(k) * w.col(k).adjoint()), l);
    }
    const Povm povm(std::move(elems), 1e-9);
    const auto p = povm_probabilities(random_density(l, rng), povm);
    double total = 0.0;
    for (double x : p) {
      EXPECT_GE(x, -1e-12);
      total += x;
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}
