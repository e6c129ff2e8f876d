#include "cli/config.hpp"

#include <algorithm>
#include <numbers>

#include "CLI11.hpp"

namespace qdarwin::cli {

namespace {

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

CLI::Option* add_choice(CLI::App& app, const std::string& flag, std::string& target, std::vector<std::string> choices,
                        const std::string& help) {
  return app.add_option(flag, target, help)->check(CLI::IsMember(std::move(choices)))->capture_default_str();
}

void register_options(CLI::App& app, RunConfig& cfg, std::string& detector) {
  const std::string& cmd = cfg.command;
  auto flag = [&](const std::string& name, auto& target, const std::string& help) {
    return app.add_option(name, target, help)->capture_default_str();
  };

  if (cmd != "selftest") {
    app.add_option("--output", cfg.output, "CSV destination (default stdout)");
    app.add_option("--plot-script", cfg.plot_script, "also write a matplotlib script for the CSV");
    flag("--budget-qubits", cfg.budget_qubits, "dense dimension cap in qubits")->check(CLI::Range(1, 30));
    app.add_option("--seed", cfg.seed, "master seed (required for stochastic runs)");
  }

  if (cmd == "mach-zehnder") {
    flag("--gamma", cfg.gamma, "overlap of the two detector records")->check(CLI::Range(0.0, 1.0));
    add_choice(app, "--detector", detector, {"on", "off"}, "which-path detector on path a");
    flag("--sweep", cfg.sweep, "evaluate this many evenly spaced gamma values in [0, 1]");
  } else if (cmd == "eraser") {
    add_choice(app, "--outcome", cfg.outcome, {"plus", "minus", "both"}, "post-selected environment outcome");
  } else if (cmd == "cat") {
    cfg.n = 1;
    flag("--n", cfg.n, "number of environment photons");
    flag("--gamma", cfg.gamma, "overlap of each photon's two records")->check(CLI::Range(0.0, 1.0));
    add_choice(app, "--initial", cfg.initial, {"superposition", "dead", "alive"}, "initial cat state");
  } else if (cmd == "spam") {
    flag("--n", cfg.n, "number of environment fragments");
    flag("--alpha", cfg.alpha, "real amplitude of |up>; beta = sqrt(1 - alpha^2)")->check(CLI::Range(0.0, 1.0));
  } else if (cmd == "partial-record") {
    cfg.n = 1;
    flag("--n", cfg.n, "number of environment fragments");
    flag("--theta", cfg.theta, "record rotation angle")->check(CLI::Range(0.0, std::numbers::pi));
    flag("--sweep", cfg.sweep, "evaluate this many evenly spaced theta values in [0, pi]");
  } else if (cmd == "pointer-sieve") {
    cfg.n = 3;
    add_choice(app, "--channel", cfg.channel, {"spam", "partial-record", "random", "identity"}, "interaction");
    flag("--n", cfg.n, "number of environment fragments");
    flag("--theta", cfg.theta, "partial-record angle")->check(CLI::Range(0.0, std::numbers::pi));
    flag("--depth", cfg.depth, "random-interaction layers");
    flag("--resolution", cfg.resolution, "Bloch grid points");
  } else if (cmd == "info-curve") {
    add_choice(app, "--channel", cfg.channel, {"spam", "partial-record", "random"}, "interaction");
    flag("--n", cfg.n, "number of environment fragments");
    flag("--alpha", cfg.alpha, "real amplitude of |up>")->check(CLI::Range(0.0, 1.0));
    flag("--theta", cfg.theta, "partial-record angle")->check(CLI::Range(0.0, std::numbers::pi));
    flag("--depth", cfg.depth, "random-interaction layers");
    flag("--delta", cfg.delta, "redundancy information deficit");
    flag("--cap", cfg.cap, "subsets per fragment size before sampling kicks in");
  } else if (cmd == "mp-fit") {
    add_choice(app, "--channel", cfg.channel, {"spam", "partial-record", "random", "identity", "depolarizing"},
               "channel to fit (fragment restriction for model interactions)");
    flag("--n", cfg.n, "number of environment fragments");
    flag("--fragment", cfg.fragment, "fragment index, 1..n");
    flag("--theta", cfg.theta, "partial-record angle")->check(CLI::Range(0.0, std::numbers::pi));
    flag("--depth", cfg.depth, "random-interaction layers");
    flag("--resolution", cfg.resolution, "Bloch grid points for the basis search");
  } else if (cmd == "emergence") {
    add_choice(app, "--family", cfg.family, {"random", "spam"}, "interaction family");
    flag("--n-min", cfg.n_min, "smallest fragment count");
    flag("--n-max", cfg.n_max, "largest fragment count");
    flag("--seeds", cfg.seeds, "interactions drawn per fragment count");
    flag("--depth", cfg.depth, "random-interaction layers");
    flag("--resolution", cfg.resolution, "Bloch grid points for the basis search");
    flag("--threads", cfg.threads, "worker threads; output does not depend on this")->check(CLI::Range(1, 256));
    app.add_flag("--rows", cfg.rows, "emit one row per fragment instead of per-n summaries");
  } else if (cmd == "selftest") {
    app.add_flag("--quick", cfg.quick, "run only the checks that reproduce stated results");
  }
}

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  const std::string& cmd = cfg.command;
  if (cmd == "selftest") return;
  if (cfg.sweep == 1) fail("--sweep needs at least 2 points");
  if (cmd == "spam" || cmd == "partial-record" || cmd == "info-curve" || cmd == "mp-fit" ||
      (cmd == "pointer-sieve" && cfg.channel != "identity")) {
    if (cfg.n == 0) fail("--n must be at least 1");
  }
  if ((cmd == "pointer-sieve" || cmd == "mp-fit" || cmd == "emergence") && cfg.resolution < 8) {
    fail("--resolution must be at least 8");
  }
  if ((cfg.channel == "random" || cmd == "emergence") && cfg.depth == 0) fail("--depth must be at least 1");
  if (cmd == "info-curve") {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) fail("--delta must lie in (0, 1)");
    if (cfg.cap == 0) fail("--cap must be positive");
  }
  if (cmd == "mp-fit" && cfg.channel != "identity" && cfg.channel != "depolarizing" &&
      (cfg.fragment == 0 || cfg.fragment > cfg.n)) {
    fail("--fragment must lie in 1..n");
  }
  if (cmd == "emergence") {
    if (cfg.n_min == 0 || cfg.n_min > cfg.n_max) fail("need 1 <= --n-min <= --n-max");
    if (cfg.seeds == 0) fail("--seeds must be positive");
  }
  if (cfg.stochastic() && !cfg.seed) fail(cmd + ": --seed is required for this configuration");
  if (!cfg.plot_script.empty() && cfg.output.empty()) fail("--plot-script needs --output so the script can find the CSV");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"mach-zehnder", "eraser",     "cat",    "spam",
                                                 "partial-record", "pointer-sieve", "info-curve", "mp-fit",
                                                 "emergence",    "selftest"};
  return names;
}

bool RunConfig::stochastic() const {
  if (command == "emergence") return true;
  if ((command == "pointer-sieve" || command == "info-curve" || command == "mp-fit") && channel == "random") {
    return true;
  }
  return command == "info-curve" && binomial(n, n / 2) > static_cast<double>(cap);
}

ParseResult parse_config(const std::vector<std::string>& args) {
  const auto& names = command_names();
  if (args.size() < 2 || std::find(names.begin(), names.end(), args[1]) == names.end()) {
    std::string list;
    for (const auto& n : names) list += " " + n;
    if (args.size() >= 2 && (args[1] == "--help" || args[1] == "-h")) {
      return {RunConfig{}, {}, true, "usage: qdarwin <command> [options]\ncommands:" + list + "\n"};
    }
    throw ConfigError("expected a command, one of:" + list);
  }

  ParseResult result;
  RunConfig& cfg = result.config;
  cfg.command = args[1];
  std::string detector = "on";

  CLI::App app("qdarwin " + cfg.command, "qdarwin " + cfg.command);
  app.set_config("--config", "", "read `key = value` lines; flags on the command line win");
  app.allow_config_extras(false);
  register_options(app, cfg, detector);

  std::vector<const char*> argv;
  const std::string prog = "qdarwin " + cfg.command;
  argv.push_back(prog.c_str());
  for (std::size_t i = 2; i < args.size(); ++i) argv.push_back(args[i].c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    result.help = true;
    result.help_text = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  cfg.detector = detector == "on";
  validate(cfg);
  result.resolved = "# qdarwin " + cfg.command + "\n" + app.config_to_str(true, false);
  return result;
}

}  // namespace qdarwin::cli
