#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdarwin/channel.hpp"
#include "qdarwin/layout.hpp"
#include "qdarwin/state.hpp"

// Scenario constructors. Every recording map is embedded as a unitary acting
// on an explicitly initialized environment (|0...0>, the "ready" state), so
// all channels here are CPTP by construction.
//
// Qubit conventions: |up> = |0>, |down> = |1>; |dead> = |0>, |alive> = |1>;
// observer |sad> = |0>, |happy> = |1>. A record with overlap g is the pair
// Ry(+phi)|0>, Ry(-phi)|0> with cos(phi) = g.

namespace qdarwin {

namespace qubit {
Ket up();
Ket down();
/// (|up> + |down>)/sqrt2, also |+>.
Ket right();
/// (|up> - |down>)/sqrt2, also |->.
Ket left();
Ket plus();
Ket minus();
/// alpha|0> + beta|1>, normalized.
Ket from_amplitudes(Complex alpha, Complex beta);
/// Pure state with Bloch vector (x, y, z), |r| = 1.
Ket from_bloch(double x, double y, double z);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
/// exp(-i theta Y / 2).
Matrix ry(double theta);
/// |0><0| ⊗ if_zero + |1><1| ⊗ if_one.
Matrix controlled(const Matrix& if_zero, const Matrix& if_one);
}  // namespace qubit

/// Record rotation angle phi = acos(overlap). Throws ArgumentError unless overlap is in [0, 1].
double record_angle(double overlap);

struct Gate {
  Matrix op;
  IndexSet targets;  // listed order = big-endian order of op's indices
};

/// Product of gates (first gate acts first) as a dense unitary on `layout`.
Matrix circuit_unitary(const SubsystemLayout& layout, const std::vector<Gate>& gates);
/// Columns are circuit(|i> ⊗ |0...0>) for each basis state i of the leading
/// subsystem(s) of total dimension `input_dim`.
Matrix circuit_isometry(const SubsystemLayout& layout, std::size_t input_dim, const std::vector<Gate>& gates);

/// 50:50 beam splitter on modes (a, b) in the single-photon basis:
/// |1,0> -> (|1,0> + |0,1>)/sqrt2, |0,1> -> (|0,1> - |1,0>)/sqrt2, |0,0> and |1,1> fixed.
Matrix beam_splitter();

struct InterferometerResult {
  double p_detector_a = 0.0;
  double p_detector_b = 0.0;
  /// Photon modes (a, b) between the beam splitters, environment traced out.
  DensityMatrix pre_bs2_reduced;
  /// 2 |<10| rho |01>| of pre_bs2_reduced.
  double visibility = 0.0;
  /// 1 unless the run post-selected on the environment.
  double postselection_probability = 1.0;
};

/// Single photon through two beam splitters with an optional which-path
/// detector on path a whose two records overlap by `overlap`.
InterferometerResult mach_zehnder(bool detector_on, double overlap);

enum class EraserOutcome { plus, minus };

/// Detector on with orthogonal records; the environment is projected onto
/// (|a> +/- |b>)/sqrt2 before the second beam splitter.
InterferometerResult erase_and_postselect(EraserOutcome outcome);

enum class CatState { dead, alive, superposition };

/// Cat (subsystem 0) and n_env photons after each photon records the cat with
/// pairwise overlap `overlap`.
Ket cat_photon_state(std::size_t n_env, double overlap, CatState initial,
                     const DimensionBudget& budget = {});

/// Reduced cat state for the (|dead> + |alive>)/sqrt2 input.
/// Off-diagonal magnitude is overlap^n_env / 2.
DensityMatrix cat_photon(std::size_t n_env, double overlap, const DimensionBudget& budget = {});

/// Reduced cat state for a pointer-state input (one orthogonal photon record).
DensityMatrix pointer_state_check(CatState initial, std::size_t n_env = 1, double overlap = 0.0);

/// System qubit -> system ⊗ n fragment qubits: CNOT from the system onto each
/// fragment, environment starting in |0...0>. Output layout [S, E1, ..., En].
KrausChannel spam_interaction(std::size_t n, const DimensionBudget& budget = {});

/// Controlled Ry(theta) onto each fragment, conditioned on |down>.
/// theta = pi reproduces spam_interaction; fragment record overlap is cos(theta/2).
KrausChannel partial_record_interaction(std::size_t n, double theta, const DimensionBudget& budget = {});

/// `depth` layers; each layer applies Haar-random two-qubit unitaries to
/// (S, E_k) for k = 1..n, then to neighbouring fragments (E_k, E_k+1).
/// Deterministic in `seed`.
KrausChannel random_interaction(std::size_t n, std::size_t depth, std::uint64_t seed,
                                const DimensionBudget& budget = {});

struct BranchReport {
  /// Weights of the dead / alive sectors of the reduced (cat, observer) state.
  std::vector<double> branch_populations;
  /// Largest |rho_ij| with i in the dead sector and j in the alive sector.
  double max_branch_coherence = 0.0;
  Ket full_state;
  /// Cat ⊗ observer with the environment traced out.
  DensityMatrix reduced;
};

/// Cat, observer, environment: the environment records the cat with overlap
/// `env_overlap`, then the observer looks (dead -> sad, alive -> happy).
BranchReport observer_cat_scenario(double env_overlap);

}  // namespace qdarwin
