#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include "cli/plot.hpp"
#include "cli/selftest.hpp"
#include "qdarwin/qdarwin.hpp"

namespace qdarwin::cli {

namespace {

void check_qubits(const RunConfig& cfg, std::size_t qubits, const char* what) {
  if (qubits > cfg.budget_qubits) {
    throw BudgetExceeded(std::string(what) + ": needs " + std::to_string(qubits) + " qubits, budget is " +
                         std::to_string(cfg.budget_qubits));
  }
}

double grid_value(std::size_t i, std::size_t count, double hi) {
  return hi * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::uint64_t require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw ConfigError(cfg.command + ": --seed is required for this configuration");
  return *cfg.seed;
}

Ket input_state(double alpha) { return qubit::from_amplitudes(alpha, std::sqrt(std::max(0.0, 1.0 - alpha * alpha))); }

KrausChannel model_channel(const RunConfig& cfg) {
  const auto budget = cfg.budget();
  if (cfg.channel == "spam") return spam_interaction(cfg.n, budget);
  if (cfg.channel == "partial-record") return partial_record_interaction(cfg.n, cfg.theta, budget);
  if (cfg.channel == "random") return random_interaction(cfg.n, cfg.depth, require_seed(cfg), budget);
  if (cfg.channel == "identity") return identity_channel(SubsystemLayout::qubits(1, "S"));
  if (cfg.channel == "depolarizing") return fully_depolarizing_channel(SubsystemLayout::qubits(1, "S"));
  throw ConfigError("unknown channel " + cfg.channel);
}

Table mach_zehnder_cmd(const RunConfig& cfg) {
  Table t({"detector", "gamma", "p_a", "p_b", "visibility"});
  const std::size_t count = cfg.sweep ? cfg.sweep : 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double g = cfg.sweep ? grid_value(i, count, 1.0) : cfg.gamma;
    const auto r = mach_zehnder(cfg.detector, g);
    t.add({cfg.detector ? "on" : "off", g, r.p_detector_a, r.p_detector_b, r.visibility});
  }
  return t;
}

Table eraser_cmd(const RunConfig& cfg) {
  Table t({"outcome", "postselection_probability", "p_a", "p_b"});
  const auto plus = erase_and_postselect(EraserOutcome::plus);
  const auto minus = erase_and_postselect(EraserOutcome::minus);
  if (cfg.outcome != "minus") t.add({"plus", plus.postselection_probability, plus.p_detector_a, plus.p_detector_b});
  if (cfg.outcome != "plus") t.add({"minus", minus.postselection_probability, minus.p_detector_a, minus.p_detector_b});
  if (cfg.outcome == "both") {
    const double wp = plus.postselection_probability, wm = minus.postselection_probability;
    t.add({"mixture", wp + wm, wp * plus.p_detector_a + wm * minus.p_detector_a,
           wp * plus.p_detector_b + wm * minus.p_detector_b});
  }
  return t;
}

Table cat_cmd(const RunConfig& cfg) {
  check_qubits(cfg, cfg.n + 1, "cat");
  Table t({"n_env", "gamma", "initial", "rho_dead", "rho_alive", "coherence", "purity", "expected_coherence"});
  DensityMatrix rho = cfg.initial == "superposition"
                          ? cat_photon(cfg.n, cfg.gamma, cfg.budget())
                          : pointer_state_check(cfg.initial == "dead" ? CatState::dead : CatState::alive, cfg.n, cfg.gamma);
  const double expected =
      cfg.initial == "superposition" ? 0.5 * std::pow(cfg.gamma, static_cast<double>(cfg.n)) : 0.0;
  t.add({cfg.n, cfg.gamma, cfg.initial, rho(0, 0).real(), rho(1, 1).real(), std::abs(rho(0, 1)), purity(rho),
         expected});
  return t;
}

Table spam_cmd(const RunConfig& cfg) {
  const auto out = apply(spam_interaction(cfg.n, cfg.budget()), DensityMatrix::pure(input_state(cfg.alpha)));
  const auto pm = Povm::projective({qubit::plus(), qubit::minus()});
  std::vector<DensityMatrix> marginals;
  for (std::size_t j = 1; j <= cfg.n; ++j) marginals.push_back(partial_trace(out, IndexSet{j}));

  Table t({"n", "alpha", "fragment", "rho_00", "rho_11", "abs_rho_01", "max_pairwise_distance", "p_plus", "p_minus",
           "mutual_information_bits"});
  for (std::size_t j = 1; j <= cfg.n; ++j) {
    const auto& m = marginals[j - 1];
    double worst = 0.0;
    for (const auto& other : marginals) worst = std::max(worst, trace_distance(m, other));
    const auto p = povm_probabilities(m, pm);
    const double mi = mutual_information(partial_trace(out, IndexSet{0, j}), IndexSet{0}, IndexSet{1});
    t.add({cfg.n, cfg.alpha, j, m(0, 0).real(), m(1, 1).real(), std::abs(m(0, 1)), worst, p[0], p[1], mi});
  }
  return t;
}

Table partial_record_cmd(const RunConfig& cfg) {
  Table t({"n", "theta", "record_overlap", "system_coherence", "system_purity", "fragment_distinguishability"});
  const std::size_t count = cfg.sweep ? cfg.sweep : 1;
  const auto up = DensityMatrix::pure(qubit::up());
  const auto down = DensityMatrix::pure(qubit::down());
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = cfg.sweep ? grid_value(i, count, std::numbers::pi) : cfg.theta;
    const auto ch = partial_record_interaction(cfg.n, theta, cfg.budget());
    const auto sys = partial_trace(apply(ch, DensityMatrix::pure(qubit::plus())), IndexSet{0});
    const auto frag = restrict_to_fragment(ch, 1);
    t.add({cfg.n, theta, std::cos(theta / 2.0), std::abs(sys(0, 1)), purity(sys),
           trace_distance(apply(frag, up), apply(frag, down))});
  }
  return t;
}

Table pointer_sieve_cmd(const RunConfig& cfg) {
  const auto sieve = pointer_sieve(model_channel(cfg), cfg.resolution);
  std::vector<bool> best(sieve.points.size(), false);
  for (std::size_t i : sieve.argmax) best[i] = true;
  Table t({"index", "x", "y", "z", "purity", "argmax"});
  for (std::size_t i = 0; i < sieve.points.size(); ++i) {
    const auto& p = sieve.points[i];
    t.add({i, p.bloch.x(), p.bloch.y(), p.bloch.z(), p.purity, static_cast<bool>(best[i])});
  }
  return t;
}

Table info_curve_cmd(const RunConfig& cfg) {
  const auto global = apply(model_channel(cfg), DensityMatrix::pure(input_state(cfg.alpha)));
  const auto curve = fragment_information_curve(global, 0, {cfg.cap, cfg.seed.value_or(0)});
  double r = 0.0;  // 0 marks "threshold never reached"
  try {
    r = redundancy(curve, cfg.delta);
  } catch (const ArgumentError&) {
  }
  Table t({"m", "mean_bits", "std_error", "samples", "exhaustive", "system_entropy", "redundancy"});
  for (const auto& p : curve.points) {
    t.add({p.m, p.mean_bits, p.std_error, p.samples, p.exhaustive, curve.system_entropy, r});
  }
  return t;
}

Table mp_fit_cmd(const RunConfig& cfg) {
  const bool direct = cfg.channel == "identity" || cfg.channel == "depolarizing";
  const auto ch = direct ? model_channel(cfg) : restrict_to_fragment(model_channel(cfg), cfg.fragment);
  const auto fit = mp_fit(ch, cfg.resolution);
  const auto w = eb_witness(ch);
  const Eigen::Vector3d axis = fit.axis.value_or(Eigen::Vector3d::Zero());
  Table t({"channel", "n", "fragment", "distance", "negativity", "negativity_exact", "trivial_povm", "axis_x",
           "axis_y", "axis_z", "sigma_fidelity"});
  t.add({cfg.channel, direct ? std::size_t{0} : cfg.n, direct ? std::size_t{0} : cfg.fragment, fit.distance,
         w.negativity, w.exact, !fit.axis.has_value(), axis.x(), axis.y(), axis.z(), fit.sigma_fidelity});
  return t;
}

Table emergence_cmd(const RunConfig& cfg) {
  EmergenceConfig ec;
  ec.family = cfg.family == "spam" ? InteractionFamily::spam : InteractionFamily::random;
  ec.depth = cfg.depth;
  ec.n_min = cfg.n_min;
  ec.n_max = cfg.n_max;
  ec.seeds_per_n = cfg.seeds;
  ec.master_seed = require_seed(cfg);
  ec.fit_resolution = cfg.resolution;
  ec.threads = cfg.threads;
  ec.budget = cfg.budget();
  const auto scan = emergence_scan(ec);
  if (cfg.rows) {
    Table t({"n", "seed_index", "seed", "fragment", "negativity", "negativity_exact", "mp_distance",
             "sigma_fidelity"});
    for (const auto& r : scan.rows) {
      t.add({r.n, r.seed_index, r.seed, r.fragment, r.negativity, r.negativity_exact, r.mp_distance,
             r.sigma_fidelity});
    }
    return t;
  }
  Table t({"n", "rows", "median_negativity", "max_negativity", "median_mp_distance", "max_mp_distance"});
  for (const auto& s : scan.summaries) {
    t.add({s.n, s.rows, s.median_negativity, s.max_negativity, s.median_mp_distance, s.max_mp_distance});
  }
  return t;
}

}  // namespace

int report_failure(std::exception_ptr failure, std::ostream& err) {
  try {
    std::rethrow_exception(failure);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ArgumentError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (...) {
    err << "invariant violation: unknown exception\n";
    return kExitInvariant;
  }
}

Table run(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "mach-zehnder") return mach_zehnder_cmd(cfg);
  if (c == "eraser") return eraser_cmd(cfg);
  if (c == "cat") return cat_cmd(cfg);
  if (c == "spam") return spam_cmd(cfg);
  if (c == "partial-record") return partial_record_cmd(cfg);
  if (c == "pointer-sieve") return pointer_sieve_cmd(cfg);
  if (c == "info-curve") return info_curve_cmd(cfg);
  if (c == "mp-fit") return mp_fit_cmd(cfg);
  if (c == "emergence") return emergence_cmd(cfg);
  throw ConfigError("command " + c + " does not produce a table");
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "selftest") {
      return run_selftest(cfg.quick, Tolerances{}, out) ? kExitOk : kExitSelftestFailed;
    }
    const Table table = run(cfg);
    if (cfg.output.empty()) {
      table.write(out);
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw ConfigError("cannot open " + cfg.output + " for writing");
      table.write(file);
      if (!file.flush()) throw ConfigError("failed writing " + cfg.output);
    }
    if (!cfg.plot_script.empty()) emit_plot_script(cfg.output, cfg.command, cfg.plot_script);
    return kExitOk;
  } catch (...) {
    return report_failure(std::current_exception(), err);
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParseResult parsed;
  try {
    parsed = parse_config(args);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (parsed.help) {
    out << parsed.help_text;
    return kExitOk;
  }
  err << parsed.resolved;
  return execute(parsed.config, out, err);
}

}  // namespace qdarwin::cli
