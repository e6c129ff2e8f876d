#include "cli/selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cli/commands.hpp"
#include "qdarwin/qdarwin.hpp"

namespace qdarwin::cli {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Outcome interference(const Tolerances& tol) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = mach_zehnder(false, 0.0);
  const auto on = mach_zehnder(true, 0.0);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double err = std::max({std::abs(off.p_detector_a), std::abs(on.p_detector_a - 0.5),
                               std::abs(on.p_detector_b - 0.5)});
  return {err <= tol.interference && secs < tol.interference_seconds,
          "off P(A)=" + num(off.p_detector_a) + ", on P(A)=" + num(on.p_detector_a) + " P(B)=" +
              num(on.p_detector_b) + ", max error " + num(err) + ", " + num(secs) + " s"};
}

Outcome partial_trace_equivalence(const Tolerances& tol) {
  Rng rng(20240601);
  const auto l = SubsystemLayout::qubits(3);
  double worst = 0.0;
  for (std::size_t i = 0; i < tol.partial_trace_samples; ++i) {
    const auto rho = random_density(l, rng);
    IndexSet part;
    for (std::size_t q = 0; q < 3; ++q) {
      if (rng.below(2) == 0) part.push_back(q);
    }
    if (part.empty() || part.size() == 3) part = {rng.below(3)};
    const auto m = random_hermitian(l.select(part), rng);
    const HermitianOperator full(embed_operator(m.entries(), l, part), l);
    worst = std::max(worst, std::abs(expectation(rho, full) - expectation(partial_trace(rho, part), m)));
  }
  return {worst <= tol.partial_trace,
          std::to_string(tol.partial_trace_samples) + " states, max |difference| " + num(worst)};
}

Outcome cat_decoherence(const Tolerances& tol) {
  const auto rho = cat_photon(1, 0.0);
  const double mix_err = max_abs(rho.entries() - Matrix::Identity(2, 2) / 2.0);
  const double fa = fidelity(pointer_state_check(CatState::alive), DensityMatrix::pure(qubit::down()));
  const double fd = fidelity(pointer_state_check(CatState::dead), DensityMatrix::pure(qubit::up()));
  const double fid_err = std::max(std::abs(1.0 - fa), std::abs(1.0 - fd));
  return {mix_err <= tol.cat && fid_err <= tol.cat,
          "mixture error " + num(mix_err) + ", pointer fidelity error " + num(fid_err)};
}

Outcome spam_objectivity(const Tolerances& tol) {
  double worst_diag = 0.0, worst_pair = 0.0, worst_pm = 0.0;
  const auto pm = Povm::projective({qubit::plus(), qubit::minus()});
  for (std::size_t n : {2, 4, 8}) {
    for (const auto& [alpha, beta] : {std::pair{0.6, 0.8}, std::pair{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2}}) {
      const auto out = apply(spam_interaction(n), DensityMatrix::pure(qubit::from_amplitudes(alpha, beta)));
      Matrix expected = Matrix::Zero(2, 2);
      expected(0, 0) = alpha * alpha;
      expected(1, 1) = beta * beta;
      std::vector<DensityMatrix> marginals;
      for (std::size_t j = 1; j <= n; ++j) marginals.push_back(partial_trace(out, IndexSet{j}));
      for (const auto& a : marginals) {
        worst_diag = std::max(worst_diag, max_abs(a.entries() - expected));
        for (const auto& b : marginals) worst_pair = std::max(worst_pair, trace_distance(a, b));
        if (alpha == beta) {
          const auto p = povm_probabilities(a, pm);
          worst_pm = std::max({worst_pm, std::abs(p[0] - 0.5), std::abs(p[1] - 0.5)});
        }
      }
    }
  }
  const bool ok = worst_diag <= tol.spam_objectivity && worst_pair < tol.spam_objectivity &&
                  worst_pm <= tol.spam_objectivity;
  return {ok, "n in {2,4,8}: marginal error " + num(worst_diag) + ", pairwise distance " + num(worst_pair) +
                  ", {+,-} error " + num(worst_pm)};
}

Outcome spam_measure_prepare(const Tolerances& tol) {
  double neg = 0.0, dist = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto spam = spam_interaction(n);
    for (std::size_t j = 1; j <= n; ++j) {
      const auto lj = restrict_to_fragment(spam, j);
      neg = std::max(neg, eb_negativity(lj));
      dist = std::max(dist, mp_fit(lj, 64).distance);
    }
  }
  return {neg < tol.measure_prepare && dist < tol.measure_prepare,
          "n=1..6, all fragments: max negativity " + num(neg) + ", max fit distance " + num(dist)};
}

Outcome pointer_sieve_check(const Tolerances& tol) {
  const auto spam = spam_interaction(4);
  const auto sieve = pointer_sieve(spam, tol.sieve_resolution);
  bool poles = sieve.argmax.size() == 2;
  for (std::size_t i : sieve.argmax) poles = poles && std::abs(std::abs(sieve.points[i].bloch.z()) - 1.0) < 1e-15;
  const double p = post_channel_system_purity(spam, qubit::plus());
  return {poles && std::abs(p - 0.5) <= tol.sieve_purity,
          "argmax " + std::to_string(sieve.argmax.size()) + " point(s)" + (poles ? " at the z poles" : " NOT the z poles") +
              ", purity(|+>) " + num(p)};
}

Outcome information_plateau(const Tolerances& tol) {
  const double s = std::numbers::sqrt2 / 2;
  const auto global = apply(spam_interaction(4), DensityMatrix::pure(qubit::from_amplitudes(s, s)));
  const auto curve = fragment_information_curve(global, 0);
  const double expected[] = {0, 1, 1, 1, 2};
  double worst = 0.0;
  std::string values;
  for (std::size_t m = 0; m < curve.points.size() && m < 5; ++m) {
    worst = std::max(worst, std::abs(curve.points[m].mean_bits - expected[m]));
    values += (m ? "," : "") + num(curve.points[m].mean_bits);
  }
  double r = 0.0;
  try {
    r = redundancy(curve, 0.1);
  } catch (const ArgumentError&) {
  }
  return {curve.points.size() == 5 && worst <= tol.plateau && std::abs(r - 4.0) <= tol.redundancy,
          "I = (" + values + ") bits, max error " + num(worst) + ", R_0.1 = " + num(r)};
}

Outcome erasure(const Tolerances& tol) {
  const auto plus = erase_and_postselect(EraserOutcome::plus);
  const auto minus = erase_and_postselect(EraserOutcome::minus);
  const double mix = plus.postselection_probability * plus.p_detector_a +
                     minus.postselection_probability * minus.p_detector_a;
  const double err = std::max({std::abs(plus.p_detector_a), std::abs(minus.p_detector_a - 1.0),
                               std::abs(plus.postselection_probability - 0.5),
                               std::abs(minus.postselection_probability - 0.5), std::abs(mix - 0.5)});
  return {err <= tol.erasure, "plus P(A)=" + num(plus.p_detector_a) + ", minus P(A)=" + num(minus.p_detector_a) +
                                  ", mixture " + num(mix) + ", max error " + num(err)};
}

Outcome generic_emergence(const Tolerances& tol) {
  const auto t0 = std::chrono::steady_clock::now();
  EmergenceConfig cfg;
  cfg.depth = 2;
  cfg.n_min = 1;
  cfg.n_max = 6;
  cfg.seeds_per_n = tol.emergence_seeds;
  cfg.master_seed = 42;
  const auto scan = emergence_scan(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool monotone = true;
  std::string medians;
  for (std::size_t i = 0; i < scan.summaries.size(); ++i) {
    medians += (i ? "," : "") + num(scan.summaries[i].median_negativity);
    if (i > 0 && scan.summaries[i].median_negativity > scan.summaries[i - 1].median_negativity) monotone = false;
  }
  const double first = scan.summaries.front().median_negativity;
  const double last = scan.summaries.back().median_negativity;
  const bool ratio = last < tol.emergence_ratio * first;
  return {monotone && ratio && secs < tol.emergence_seconds,
          "median negativity n=1..6: (" + medians + ")" + (monotone ? "" : " not monotone") +
              (ratio ? "" : ", ratio bound missed") + ", " + num(secs) + " s"};
}

Outcome observer_branches(const Tolerances& tol) {
  const auto r = observer_cat_scenario(0.0);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;  // |dead, sad>
  expected(3, 3) = 0.5;  // |alive, happy>
  const double err = max_abs(r.reduced.entries() - expected);
  return {r.max_branch_coherence < tol.branch && err <= tol.branch,
          "branch coherence " + num(r.max_branch_coherence) + ", mixture error " + num(err)};
}

Outcome determinism(const Tolerances&) {
  std::vector<std::string> mismatched;
  auto same = [&](const std::string& label, const RunConfig& a, const RunConfig& b) {
    if (run(a).str() != run(b).str()) mismatched.push_back(label);
  };
  RunConfig em;
  em.command = "emergence";
  em.n_max = 3;
  em.seeds = 6;
  em.resolution = 16;
  em.seed = 42;
  em.rows = true;
  for (std::size_t threads : {1, 2, 4}) {
    RunConfig other = em;
    other.threads = threads;
    same("emergence threads=" + std::to_string(threads), em, other);
  }
  RunConfig ic;
  ic.command = "info-curve";
  ic.channel = "random";
  ic.n = 6;
  ic.cap = 5;
  ic.seed = 7;
  same("info-curve", ic, ic);
  RunConfig ps;
  ps.command = "pointer-sieve";
  ps.channel = "random";
  ps.n = 3;
  ps.resolution = 32;
  ps.seed = 11;
  same("pointer-sieve", ps, ps);
  RunConfig mp;
  mp.command = "mp-fit";
  mp.channel = "random";
  mp.n = 3;
  mp.fragment = 2;
  mp.seed = 13;
  same("mp-fit", mp, mp);
  std::string detail = "emergence (threads 1/2/4), info-curve, pointer-sieve, mp-fit";
  for (const auto& m : mismatched) detail += "; differs: " + m;
  return {mismatched.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  bool paper;
  std::function<Outcome(const Tolerances&)> check;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "interference destruction", true, interference},
      {2, "partial-trace equivalence", true, partial_trace_equivalence},
      {3, "cat decoherence", true, cat_decoherence},
      {4, "spam objectivity", true, spam_objectivity},
      {5, "spam channel is measure-and-prepare", true, spam_measure_prepare},
      {6, "pointer sieve", true, pointer_sieve_check},
      {7, "information plateau", false, information_plateau},
      {8, "erasure", false, erasure},
      {9, "generic-emergence trend", false, generic_emergence},
      {10, "observer-branch mixture", true, observer_branches},
      {11, "determinism", false, determinism},
  };
  return all;
}

}  // namespace

std::vector<CriterionResult> evaluate_criteria(bool quick, const Tolerances& tol) {
  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (quick && !c.paper) continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.reproduces_paper = c.paper;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = c.check(tol);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
  return results;
}

bool run_selftest(bool quick, const Tolerances& tol, std::ostream& out) {
  bool all = true;
  for (const auto& r : evaluate_criteria(quick, tol)) {
    out << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.name << "): " << r.detail << '\n';
    all = all && r.passed;
  }
  out << (all ? "all criteria passed" : "FAILED") << '\n';
  return all;
}

}  // namespace qdarwin::cli
