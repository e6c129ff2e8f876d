#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qdarwin;

namespace {

const double kS = std::numbers::sqrt2 / 2.0;

Ket bell() {
  Vector v = Vector::Zero(4);
  v(0) = kS;
  v(3) = kS;
  return {v, SubsystemLayout::qubits(2)};
}

}  // namespace

TEST(Ket, ValidatesNormAndSize) {
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(Ket(v, SubsystemLayout::qubits(1)), InvariantViolation);
  EXPECT_THROW(Ket(Vector::Ones(3), SubsystemLayout::qubits(1)), DimensionError);
  EXPECT_NEAR(Ket::normalized(v, SubsystemLayout::qubits(1)).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(Ket::normalized(Vector::Zero(2), SubsystemLayout::qubits(1)), InvariantViolation);
}

TEST(DensityMatrix, ValidatesInvariants) {
  const auto q = SubsystemLayout::qubits(1);
  Matrix m(2, 2);
  m << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(DensityMatrix(m, q), InvariantViolation);  // not Hermitian
  m << 0.6, 0, 0, 0.6;
  EXPECT_THROW(DensityMatrix(m, q), InvariantViolation);  // trace
  m << 1.2, 0, 0, -0.2;
  EXPECT_THROW(DensityMatrix(m, q), InvariantViolation);  // negative eigenvalue
  m << 0.5, 0, 0, 0.5;
  EXPECT_NO_THROW(DensityMatrix(m, q));
  EXPECT_THROW(DensityMatrix(Matrix::Identity(3, 3) / 3.0, q), DimensionError);
}

TEST(Tensor, BasisKets) {
  const auto k = tensor(qubit::up(), qubit::down());
  Vector expected(4);
  expected << 0, 1, 0, 0;
  EXPECT_MATRIX_NEAR(k.amplitudes(), expected, 0.0);
  EXPECT_EQ(k.layout().size(), 2u);
}

TEST(Tensor, CatPhotonIndexMatchesEnumeration) {
  // |alive> ⊗ |r>: index 2 * a + r, checked against every 4-vector.
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t r = 0; r < 2; ++r) {
      const auto k = tensor(Ket::basis(SubsystemLayout::single(2, "cat"), a),
                            Ket::basis(SubsystemLayout::single(2, "photon"), r));
      for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(std::abs(k[i]), i == 2 * a + r ? 1.0 : 0.0);
      EXPECT_EQ(k.layout().labels(), (std::vector<std::string>{"cat", "photon"}));
    }
  }
}

TEST(Tensor, OperatorsAndStatesUseKronecker) {
  Rng rng(5);
  const auto a = random_density(SubsystemLayout::qubits(1, "a"), rng);
  const auto b = random_density(SubsystemLayout::single(3, "b"), rng);
  const auto ab = tensor(a, b);
  EXPECT_EQ(ab.dim(), 6u);
  EXPECT_MATRIX_NEAR(ab.entries(), kron(a.entries(), b.entries()), 0.0);
  const auto h = tensor(a.as_operator(), b.as_operator());
  EXPECT_MATRIX_NEAR(h.entries(), ab.entries(), 0.0);
}

TEST(PartialTrace, RoundTripWithMaximallyMixed) {
  Rng rng(1);
  const auto rho = random_density(SubsystemLayout::qubits(1, "s"), rng);
  const auto joint = tensor(rho, DensityMatrix::maximally_mixed(SubsystemLayout::qubits(1, "e")));
  const IndexSet keep = {0};
  EXPECT_MATRIX_NEAR(partial_trace(joint, keep).entries(), rho.entries(), 1e-15);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const IndexSet keep = {0};
  EXPECT_MATRIX_NEAR(partial_trace(DensityMatrix::pure(bell()), keep).entries(), Matrix::Identity(2, 2) / 2.0, 1e-15);
  EXPECT_MATRIX_NEAR(partial_trace(bell(), keep).entries(), Matrix::Identity(2, 2) / 2.0, 1e-15);
}

TEST(PartialTrace, ProductMarginal) {
  Rng rng(2);
  const auto a = random_density(SubsystemLayout::single(3, "a"), rng);
  const auto b = random_density(SubsystemLayout::single(2, "b"), rng);
  const IndexSet keep = {1};
  const auto rb = partial_trace(tensor(a, b), keep);
  EXPECT_MATRIX_NEAR(rb.entries(), b.entries(), 1e-14);
  EXPECT_EQ(rb.layout().label(0), "b");
}

TEST(PartialTrace, WhichPathStateLeavesPhotonMixture) {
  // (|1,0,a> + |0,1,b>)/sqrt2 with <a|b> = 0; keep the photon modes.
  const SubsystemLayout l({2, 2, 2}, {"a", "b", "D"});
  Vector v = Vector::Zero(8);
  v(l.flat(std::vector<std::size_t>{1, 0, 0})) = kS;
  v(l.flat(std::vector<std::size_t>{0, 1, 1})) = kS;
  const IndexSet keep = {0, 1};
  const auto reduced = partial_trace(DensityMatrix::pure(Ket(v, l)), keep);
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 0.5;  // |01><01|
  expected(2, 2) = 0.5;  // |10><10|
  EXPECT_MATRIX_NEAR(reduced.entries(), expected, 1e-15);
}

TEST(PartialTrace, MatchesKroneckerOracleOnMiddleFactor) {
  Rng rng(11);
  const SubsystemLayout l({2, 3, 2}, {"x", "y", "z"});
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_density(l, rng);
    const IndexSet keep = {0, 2};
    EXPECT_MATRIX_NEAR(partial_trace(rho, keep).entries(), oracle::trace_middle(rho.entries(), 2, 3, 2), 1e-14);
  }
}

TEST(PartialTrace, KetPathAgreesWithDensityPath) {
  Rng rng(12);
  const auto l = SubsystemLayout::qubits(5);
  const auto psi = random_ket(l, rng);
  for (const IndexSet& keep : {IndexSet{0}, IndexSet{1, 3}, IndexSet{4, 0, 2}}) {
    EXPECT_MATRIX_NEAR(partial_trace(psi, keep).entries(), partial_trace(DensityMatrix::pure(psi), keep).entries(),
                       1e-14);
  }
}

TEST(PartialTrace, Errors) {
  const auto rho = DensityMatrix::pure(bell());
  EXPECT_THROW(partial_trace(rho, IndexSet{}), DimensionError);
  EXPECT_THROW(partial_trace(rho, IndexSet{2}), DimensionError);
}

TEST(PartialTrace, PreservesTraceOnRandomStates) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const auto l = SubsystemLayout::qubits(n);
    const auto rho = random_density(l, rng);
    IndexSet keep;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.below(2) == 0) keep.push_back(i);
    }
    if (keep.empty()) keep.push_back(rng.below(n));
    EXPECT_NEAR(partial_trace(rho, keep).entries().trace().real(), 1.0, 1e-10);
  }
}

TEST(Expectation, Examples) {
  const auto zero = DensityMatrix::pure(qubit::up());
  EXPECT_NEAR(expectation(zero, HermitianOperator::projector(qubit::up())), 1.0, 1e-15);
  const auto mixed = DensityMatrix::maximally_mixed(SubsystemLayout::qubits(1));
  EXPECT_NEAR(expectation(mixed, HermitianOperator(qubit::pauli_z(), SubsystemLayout::qubits(1))), 0.0, 1e-15);
  EXPECT_THROW(expectation(mixed, HermitianOperator::identity(SubsystemLayout::qubits(2))), DimensionError);
}

// Tr(rho (M_A ⊗ I)) = Tr(Tr_rest(rho) M_A) on random 2-4 qubit inputs.
TEST(Expectation, LocalObservableEqualsReducedEvaluation) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    const auto l = SubsystemLayout::qubits(n);
    const auto rho = random_density(l, rng);
    const IndexSet part = {0};
    const auto m_a = random_hermitian(l.select(part), rng);
    const Matrix full = kron(m_a.entries(), Matrix::Identity(static_cast<Eigen::Index>(l.total_dim() / 2),
                                                             static_cast<Eigen::Index>(l.total_dim() / 2)));
    const double lhs = expectation(rho, HermitianOperator(full, l));
    const double rhs = expectation(partial_trace(rho, part), m_a);
    EXPECT_NEAR(lhs, rhs, 1e-10);
  }
}

TEST(PartialTranspose, BellSpectrum) {
  const auto pt = partial_transpose(DensityMatrix::pure(bell()), IndexSet{1});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = expected(1, 2) = expected(2, 1) = 0.5;
  EXPECT_MATRIX_NEAR(pt.entries(), expected, 1e-15);
  const auto ev = pt.eigenvalues();
  EXPECT_NEAR(ev(0), -0.5, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 0.5, 1e-14);
}

TEST(PartialTranspose, ProductAndDiagonalStates) {
  Rng rng(4);
  const auto a = random_density(SubsystemLayout::qubits(1, "a"), rng);
  const auto b = random_density(SubsystemLayout::qubits(1, "b"), rng);
  const auto pt = partial_transpose(tensor(a, b), IndexSet{1});
  EXPECT_MATRIX_NEAR(pt.entries(), kron(a.entries(), b.entries().transpose()), 1e-15);
  EXPECT_MATRIX_NEAR(pt.eigenvalues(), tensor(a, b).eigenvalues(), 1e-12);

  const std::vector<double> probs = {0.1, 0.2, 0.3, 0.4};
  const auto diag = DensityMatrix::diagonal(probs, SubsystemLayout::qubits(2));
  EXPECT_MATRIX_NEAR(partial_transpose(diag, IndexSet{0}).entries(), diag.entries(), 0.0);
  EXPECT_THROW(partial_transpose(diag, IndexSet{5}), DimensionError);
}

TEST(ApplyLocal, MatchesEmbeddedOperator) {
  Rng rng(9);
  const SubsystemLayout l({2, 3, 2}, {"a", "b", "c"});
  const auto psi = random_ket(l, rng);
  const Matrix u = haar_unitary(4, rng);
  const IndexSet targets = {2, 0};  // op index = 2 * c + a
  const Ket out = apply_local(psi, u, targets);
  // Oracle: permute basis explicitly.
  Vector expected = Vector::Zero(12);
  for (std::size_t i = 0; i < 12; ++i) {
    const auto d = l.digits(i);
    for (std::size_t c2 = 0; c2 < 2; ++c2) {
      for (std::size_t a2 = 0; a2 < 2; ++a2) {
        const std::vector<std::size_t> src = {a2, d[1], c2};
        expected(static_cast<Eigen::Index>(i)) +=
            u(static_cast<Eigen::Index>(2 * d[2] + d[0]), static_cast<Eigen::Index>(2 * c2 + a2)) *
            psi[l.flat(src)];
      }
    }
  }
  EXPECT_MATRIX_NEAR(out.amplitudes(), expected, 1e-14);
  EXPECT_MATRIX_NEAR(embed_operator(u, l, targets) * psi.amplitudes(), expected, 1e-14);
  EXPECT_THROW(apply_local(psi, u, IndexSet{0, 0}), DimensionError);
  EXPECT_THROW(apply_local(psi, u, IndexSet{0, 1}), DimensionError);
}

TEST(ProjectAndRenormalize, Examples) {
  const auto up = qubit::up();
  auto [same, p1] = project_and_renormalize(up, HermitianOperator::projector(up));
  EXPECT_NEAR(p1, 1.0, 1e-15);
  EXPECT_NEAR(std::abs(same.inner(up)), 1.0, 1e-15);

  EXPECT_THROW(project_and_renormalize(up, HermitianOperator::projector(qubit::down())), PostselectionError);

  const auto proj = tensor(HermitianOperator::identity(SubsystemLayout::qubits(1)),
                           HermitianOperator::projector(qubit::plus()));
  auto [post, p] = project_and_renormalize(bell(), proj);
  EXPECT_NEAR(p, 0.5, 1e-15);
  EXPECT_MATRIX_NEAR(post.amplitudes(), Vector::Constant(4, 0.5), 1e-15);

  Matrix not_projector = Matrix::Identity(2, 2) * 0.5;
  EXPECT_THROW(project_and_renormalize(up, HermitianOperator(not_projector, SubsystemLayout::qubits(1))),
               ArgumentError);
}
