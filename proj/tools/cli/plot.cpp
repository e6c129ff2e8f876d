#include "cli/plot.hpp"

#include <fstream>

#include "qdarwin/errors.hpp"

namespace qdarwin::cli {

namespace {

const char* kPreamble = R"py(import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV = {csv!r}
if len(sys.argv) > 1:
    CSV = sys.argv[1]
with open(CSV, newline="") as fh:
    rows = list(csv.DictReader(fh))


def col(name):
    return [float(r[name]) for r in rows]


fig, ax = plt.subplots(figsize=(5, 3.5))
)py";

const char* kFooter = R"py(fig.tight_layout()
fig.savefig(CSV.rsplit(".", 1)[0] + ".png", dpi=150)
)py";

const char* kMachZehnder = R"py(ax.plot(col("gamma"), col("p_a"), "o-", label="P(A)")
ax.plot(col("gamma"), col("p_b"), "s-", label="P(B)")
ax.set_xlabel("record overlap gamma")
ax.set_ylabel("detection probability")
ax.legend()
)py";

const char* kPartialRecord = R"py(ax.plot(col("theta"), col("system_coherence"), "o-", label="system coherence")
ax.plot(col("theta"), col("fragment_distinguishability"), "s-", label="fragment distinguishability")
ax.set_xlabel("theta (rad)")
ax.legend()
)py";

const char* kInfoCurve = R"py(ax.errorbar(col("m"), col("mean_bits"), yerr=col("std_error"), fmt="o-", capsize=3)
h = col("system_entropy")[0]
ax.axhline(h, color="gray", ls="--", label="S(system)")
ax.axhline(2 * h, color="gray", ls=":", label="2 S(system)")
ax.set_xlabel("fragment size m")
ax.set_ylabel("I(S : F_m) [bits]")
ax.legend()
)py";

const char* kEmergence = R"py(if "seed_index" in rows[0]:
    import statistics

    ns = sorted({int(r["n"]) for r in rows})
    groups = [[float(r["negativity"]) for r in rows if int(r["n"]) == n] for n in ns]
    med = [statistics.median(g) for g in groups]
    lo = [statistics.quantiles(g, n=4)[0] if len(g) > 1 else g[0] for g in groups]
    hi = [statistics.quantiles(g, n=4)[2] if len(g) > 1 else g[0] for g in groups]
    band = "interquartile range"
else:
    ns = col("n")
    med = col("median_negativity")
    lo = [0.0] * len(ns)
    hi = col("max_negativity")
    band = "0 to max"
ax.plot(ns, med, "o-", label="median Choi negativity")
ax.fill_between(ns, lo, hi, alpha=0.25, label=band)
ax.set_xlabel("fragments n")
ax.set_ylabel("negativity of fragment channel")
ax.legend()
)py";

const char* kPointerSieve = R"py(ax.scatter(col("z"), col("purity"), s=12)
ax.set_xlabel("Bloch z of input")
ax.set_ylabel("system purity after interaction")
)py";

std::string python_repr(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\\' || c == '\'') out += '\\';
    out += c;
  }
  return out + "'";
}

}  // namespace

std::string plot_script(const Table& table, std::string_view kind, const std::string& csv_path) {
  const char* body = nullptr;
  if (kind == "mach-zehnder") body = kMachZehnder;
  else if (kind == "partial-record") body = kPartialRecord;
  else if (kind == "info-curve") body = kInfoCurve;
  else if (kind == "emergence") body = kEmergence;
  else if (kind == "pointer-sieve") body = kPointerSieve;
  else throw ArgumentError("no plot available for command kind '" + std::string(kind) + "'");
  if (table.rows().empty()) throw ArgumentError("cannot plot an empty CSV");

  std::string script = kPreamble;
  const std::string key = "{csv!r}";
  script.replace(script.find(key), key.size(), python_repr(csv_path));
  return script + body + kFooter;
}

void emit_plot_script(const std::string& csv_path, std::string_view kind, const std::string& script_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + csv_path);
  const std::string script = plot_script(parse_csv(in), kind, csv_path);
  std::ofstream out(script_path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + script_path);
  out << script;
}

}  // namespace qdarwin::cli
