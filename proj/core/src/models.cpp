#include "qdarwin/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdarwin/errors.hpp"
#include "qdarwin/information.hpp"
#include "qdarwin/kernels.hpp"
#include "qdarwin/random.hpp"

namespace qdarwin {

namespace qubit {

namespace {
SubsystemLayout one() { return SubsystemLayout::single(2, "q"); }
}  // namespace

Ket from_amplitudes(Complex alpha, Complex beta) {
  Vector v(2);
  v << alpha, beta;
  return Ket::normalized(std::move(v), one());
}

Ket up() { return from_amplitudes(1.0, 0.0); }
Ket down() { return from_amplitudes(0.0, 1.0); }
Ket right() { return from_amplitudes(1.0, 1.0); }
Ket left() { return from_amplitudes(1.0, -1.0); }
Ket plus() { return right(); }
Ket minus() { return left(); }

Ket from_bloch(double x, double y, double z) {
  const double theta = std::acos(std::clamp(z, -1.0, 1.0));
  const double phi = std::atan2(y, x);
  return from_amplitudes(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi));
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  const Complex i{0.0, 1.0};
  Matrix m(2, 2);
  m << 0, -i, i, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix ry(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

Matrix controlled(const Matrix& if_zero, const Matrix& if_one) {
  const auto d = if_zero.rows();
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = if_zero;
  m.bottomRightCorner(d, d) = if_one;
  return m;
}

}  // namespace qubit

namespace {

// Records: subsystem in state 0 -> Ry(-phi)|0>, state 1 -> Ry(+phi)|0>.
Matrix record_gate(double overlap) {
  const double phi = record_angle(overlap);
  return qubit::controlled(qubit::ry(-phi), qubit::ry(phi));
}

void apply_gates(Vector& v, const SubsystemLayout& layout, const std::vector<Gate>& gates) {
  for (const auto& g : gates) apply_local_inplace(v, layout, g.op, g.targets);
}

SubsystemLayout system_and_fragments(std::size_t n) {
  return SubsystemLayout::single(2, "S").concat(SubsystemLayout::qubits(n, "E"));
}

void require_fragments(std::size_t n, const DimensionBudget& budget, const char* what) {
  if (n == 0) throw ArgumentError(std::string(what) + ": need at least one fragment");
  if (n >= 62) throw BudgetExceeded(std::string(what) + ": fragment count too large");
  budget.check(std::size_t{2} << n, what);
}

// Probabilities of one photon in mode a (detector A) and mode b (detector B).
std::pair<double, double> detector_probabilities(const Ket& psi) {
  double pa = 0.0;
  double pb = 0.0;
  const auto& layout = psi.layout();
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const auto d = layout.digits(i);
    const double w = std::norm(psi[i]);
    if (d[0] == 1 && d[1] == 0) pa += w;
    if (d[0] == 0 && d[1] == 1) pb += w;
  }
  return {pa, pb};
}

InterferometerResult finish_interferometer(const Ket& before_bs2, double postselection_probability) {
  const IndexSet modes = {0, 1};
  DensityMatrix reduced = partial_trace(before_bs2, modes);
  const double visibility = 2.0 * std::abs(reduced(2, 1));
  const Ket after = apply_local(before_bs2, beam_splitter(), modes);
  const auto [pa, pb] = detector_probabilities(after);
  return {pa, pb, std::move(reduced), visibility, postselection_probability};
}

// Photon in mode a, mode b empty, detector ready; first beam splitter and the
// optional which-path record applied.
Ket interferometer_before_bs2(bool detector_on, double overlap) {
  const SubsystemLayout layout({2, 2, 2}, {"a", "b", "D"});
  const std::size_t start[] = {1, 0, 0};
  Vector v = Ket::basis(layout, start).amplitudes();
  std::vector<Gate> gates{{beam_splitter(), {0, 1}}};
  if (detector_on) gates.push_back({record_gate(overlap), {0, 2}});
  apply_gates(v, layout, gates);
  return {std::move(v), layout, unchecked};
}

}  // namespace

double record_angle(double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw ArgumentError("record overlap " + std::to_string(overlap) + " is outside [0, 1]");
  }
  return std::acos(overlap);
}

Matrix circuit_unitary(const SubsystemLayout& layout, const std::vector<Gate>& gates) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  Matrix u = Matrix::Identity(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    Vector col = u.col(c);
    apply_gates(col, layout, gates);
    u.col(c) = col;
  }
  return u;
}

Matrix circuit_isometry(const SubsystemLayout& layout, std::size_t input_dim, const std::vector<Gate>& gates) {
  const std::size_t d = layout.total_dim();
  if (input_dim == 0 || d % input_dim != 0) throw DimensionError("isometry: input dimension does not divide layout");
  const std::size_t env = d / input_dim;
  Matrix v(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(input_dim));
  for (std::size_t i = 0; i < input_dim; ++i) {
    Vector col = Vector::Zero(static_cast<Eigen::Index>(d));
    col(static_cast<Eigen::Index>(i * env)) = 1.0;
    apply_gates(col, layout, gates);
    v.col(static_cast<Eigen::Index>(i)) = col;
  }
  return v;
}

Matrix beam_splitter() {
  const double s = std::numbers::sqrt2 / 2.0;
  // Basis order |00>, |01>, |10>, |11> over (a, b).
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(3, 3) = 1.0;
  m(2, 2) = s;   // |10> -> s|10> + s|01>
  m(1, 2) = s;
  m(1, 1) = s;   // |01> -> s|01> - s|10>
  m(2, 1) = -s;
  return m;
}

InterferometerResult mach_zehnder(bool detector_on, double overlap) {
  record_angle(overlap);
  return finish_interferometer(interferometer_before_bs2(detector_on, overlap), 1.0);
}

InterferometerResult erase_and_postselect(EraserOutcome outcome) {
  const Ket mid = interferometer_before_bs2(true, 0.0);
  // Records left in D by the photon in path a and path b.
  const double phi = record_angle(0.0);
  const Vector rec_a = qubit::ry(phi).col(0);
  const Vector rec_b = qubit::ry(-phi).col(0);
  const double sign = outcome == EraserOutcome::plus ? 1.0 : -1.0;
  const Ket erased = Ket::normalized(rec_a + sign * rec_b, SubsystemLayout::single(2, "D"));
  const HermitianOperator projector =
      tensor(HermitianOperator::identity(SubsystemLayout({2, 2}, {"a", "b"})), HermitianOperator::projector(erased));
  auto [post, probability] = project_and_renormalize(mid, projector);
  return finish_interferometer(post, probability);
}

Ket cat_photon_state(std::size_t n_env, double overlap, CatState initial, const DimensionBudget& budget) {
  if (n_env >= 62) throw BudgetExceeded("cat_photon: photon count too large");
  budget.check(std::size_t{2} << n_env, "cat_photon");
  record_angle(overlap);
  const SubsystemLayout layout = SubsystemLayout::single(2, "cat").concat(SubsystemLayout::qubits(n_env, "photon"));
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  const auto alive_index = static_cast<Eigen::Index>(layout.stride(0));
  switch (initial) {
    case CatState::dead: v(0) = 1.0; break;
    case CatState::alive: v(alive_index) = 1.0; break;
    case CatState::superposition:
      v(0) = std::numbers::sqrt2 / 2.0;
      v(alive_index) = std::numbers::sqrt2 / 2.0;
      break;
  }
  const Matrix gate = record_gate(overlap);
  for (std::size_t k = 1; k <= n_env; ++k) {
    const std::size_t targets[] = {0, k};
    apply_local_inplace(v, layout, gate, targets);
  }
  return {std::move(v), layout, unchecked};
}

DensityMatrix cat_photon(std::size_t n_env, double overlap, const DimensionBudget& budget) {
  const IndexSet cat = {0};
  return partial_trace(cat_photon_state(n_env, overlap, CatState::superposition, budget), cat);
}

DensityMatrix pointer_state_check(CatState initial, std::size_t n_env, double overlap) {
  const IndexSet cat = {0};
  return partial_trace(cat_photon_state(n_env, overlap, initial), cat);
}

KrausChannel spam_interaction(std::size_t n, const DimensionBudget& budget) {
  require_fragments(n, budget, "spam_interaction");
  const SubsystemLayout out = system_and_fragments(n);
  std::vector<Gate> gates;
  for (std::size_t k = 1; k <= n; ++k) gates.push_back({qubit::controlled(Matrix::Identity(2, 2), qubit::pauli_x()), {0, k}});
  return isometry_channel(circuit_isometry(out, 2, gates), SubsystemLayout::single(2, "S"), out);
}

KrausChannel partial_record_interaction(std::size_t n, double theta, const DimensionBudget& budget) {
  require_fragments(n, budget, "partial_record_interaction");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw ArgumentError("partial_record_interaction: theta " + std::to_string(theta) + " outside [0, pi]");
  }
  const SubsystemLayout out = system_and_fragments(n);
  const Matrix gate = qubit::controlled(Matrix::Identity(2, 2), qubit::ry(theta));
  std::vector<Gate> gates;
  for (std::size_t k = 1; k <= n; ++k) gates.push_back({gate, {0, k}});
  return isometry_channel(circuit_isometry(out, 2, gates), SubsystemLayout::single(2, "S"), out);
}

KrausChannel random_interaction(std::size_t n, std::size_t depth, std::uint64_t seed, const DimensionBudget& budget) {
  require_fragments(n, budget, "random_interaction");
  if (depth == 0) throw ArgumentError("random_interaction: depth must be at least 1");
  const SubsystemLayout out = system_and_fragments(n);
  Rng rng(seed);
  std::vector<Gate> gates;
  for (std::size_t layer = 0; layer < depth; ++layer) {
    for (std::size_t k = 1; k <= n; ++k) gates.push_back({haar_unitary(4, rng), {0, k}});
    for (std::size_t k = 1; k < n; ++k) gates.push_back({haar_unitary(4, rng), {k, k + 1}});
  }
  return isometry_channel(circuit_isometry(out, 2, gates), SubsystemLayout::single(2, "S"), out);
}

BranchReport observer_cat_scenario(double env_overlap) {
  record_angle(env_overlap);
  const SubsystemLayout layout({2, 2, 2}, {"cat", "observer", "env"});
  Vector v = Vector::Zero(8);
  v(0) = std::numbers::sqrt2 / 2.0;  // |dead, ready, ready>
  v(4) = std::numbers::sqrt2 / 2.0;  // |alive, ready, ready>
  const std::vector<Gate> gates{
      {record_gate(env_overlap), {0, 2}},
      {qubit::controlled(Matrix::Identity(2, 2), qubit::pauli_x()), {0, 1}},
  };
  apply_gates(v, layout, gates);
  Ket full(std::move(v), layout, unchecked);
  const IndexSet kept = {0, 1};
  DensityMatrix reduced = partial_trace(full, kept);

  // Sectors of the (cat, observer) space by the cat digit.
  std::vector<double> populations(2, 0.0);
  double coherence = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    populations[i / 2] += reduced(i, i).real();
    for (std::size_t j = 0; j < 4; ++j) {
      if (i / 2 == 0 && j / 2 == 1) coherence = std::max(coherence, std::abs(reduced(i, j)));
    }
  }
  return {std::move(populations), coherence, std::move(full), std::move(reduced)};
}

}  // namespace qdarwin
