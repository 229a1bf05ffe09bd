"""Monte Carlo sweeps over random regular graphs.

Each (n, sample) pair draws its graph from seed ``mix(mix(seed, n), sample)``,
so any record can be regenerated on its own and the sweep output does not
depend on how records are scheduled across workers.
"""

import csv
import io
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace

from .anneal import AnnealConfig, heuristic_genus
from .graph import count_short_cycles
from .random_graph import SampleConfig, sample_regular
from .rng import mix
from .search import (
    DEFAULT_GENUS_BUDGET,
    exact_genus,
    genus_bounds,
    theoretical_alpha,
)

CSV_COLUMNS = ("d", "n", "sample", "seed", "mode", "genus_lower", "genus_upper",
               "alpha", "F", "E", "f_over_e", "cycles_le_m", "m", "elapsed_ms", "status")
SUMMARY_COLUMNS = ("d", "n", "records", "alpha_mean", "alpha_std",
                   "f_over_e_mean", "f_over_e_std", "alpha_asymptote")


@dataclass
class ExperimentRecord:
    d: int
    n: int
    sample: int
    seed: int
    mode: str
    genus_lower: int = None
    genus_upper: int = None
    F: int = None
    E: int = None
    cycles_le_m: int = None
    m: int = 5
    elapsed_ms: float = 0.0
    status: str = "ok"

    @property
    def alpha(self):
        return None if self.genus_upper is None else self.genus_upper / self.n

    @property
    def f_over_e(self):
        return None if self.F is None else self.F / self.E

    @property
    def witness_backed(self):
        return self.F is not None and self.mode in ("exact", "heuristic")

    def row(self, timing=True):
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values["alpha"] = self.alpha
        values["f_over_e"] = self.f_over_e
        if not timing:
            values["elapsed_ms"] = None
        elif self.elapsed_ms is not None:
            values["elapsed_ms"] = round(self.elapsed_ms, 3)
        return ["" if values[c] is None else values[c] for c in CSV_COLUMNS]


def record_seed(seed, n, sample):
    return mix(mix(seed, n), sample)


def check_alpha_identity(rec, rel_tol=1e-12):
    """alpha == (d-2)/4 + 1/n - (d/4)(F/E), up to float representation."""
    if rec.F is None or rec.genus_upper is None:
        return False
    lhs = rec.genus_upper / rec.n
    rhs = (rec.d - 2) / 4 + 1 / rec.n - (rec.d / 4) * (rec.F / rec.E)
    return math.isclose(lhs, rhs, rel_tol=rel_tol, abs_tol=rel_tol)


@dataclass(frozen=True)
class _Task:
    d: int
    n: int
    sample: int
    seed: int
    mode: str
    m: int
    budget: int
    anneal: AnnealConfig
    require_simple: bool
    require_connected: bool


def _run_record(task):
    started = time.perf_counter()
    rec = ExperimentRecord(task.d, task.n, task.sample, task.seed, task.mode, m=task.m,
                           E=task.d * task.n // 2)
    try:
        g = sample_regular(SampleConfig(task.d, task.n, task.seed, task.require_simple,
                                        task.require_connected))
    except (RuntimeError, ValueError) as exc:
        rec.mode = "bounds-only"
        rec.status = f"error: {exc}"
        rec.elapsed_ms = (time.perf_counter() - started) * 1000
        return rec
    try:
        schedule = replace(task.anneal, seed=task.seed)
        if task.mode == "exact":
            res = exact_genus(g, task.budget, fallback=schedule)
        else:
            res = heuristic_genus(g, schedule)
        if res.extra.get("budget_exceeded"):
            rec.status = "budget_exceeded"
    except (RuntimeError, ValueError) as exc:
        res = genus_bounds(g)
        rec.status = f"error: {exc}"
    rec.mode = res.mode
    rec.genus_lower = res.genus_lower
    rec.genus_upper = res.genus_upper
    if res.embedding is not None:
        rec.F = res.embedding.F
    rec.E = g.num_edges
    rec.cycles_le_m = count_short_cycles(g, task.m).total
    rec.elapsed_ms = (time.perf_counter() - started) * 1000
    return rec


def run_sweep(d, n_values, samples_per_n, seed, mode="exact", m=5,
              exact_max=16, budget=DEFAULT_GENUS_BUDGET, anneal=None,
              require_simple=True, require_connected=True, workers=1):
    """One record per (n, sample); exact search up to ``exact_max``, annealing beyond."""
    n_values = list(n_values)
    if n_values != sorted(n_values):
        raise ValueError("n_values must be ascending")
    for n in n_values:
        if (d * n) % 2:
            raise ValueError(f"d*n is odd for n={n}")
    if mode not in ("exact", "anneal"):
        raise ValueError(f"unknown mode {mode!r}")
    anneal = anneal or AnnealConfig()
    tasks = []
    for n in n_values:
        rec_mode = "exact" if mode == "exact" and n <= exact_max else "anneal"
        for s in range(samples_per_n):
            tasks.append(_Task(d, n, s, record_seed(seed, n, s), rec_mode, m, budget,
                               anneal, require_simple, require_connected))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_record, tasks, chunksize=4))
    else:
        records = [_run_record(t) for t in tasks]
    records.sort(key=lambda r: (r.n, r.sample))
    return records


def records_to_csv(records, timing=True):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.row(timing))
    return buf.getvalue()


def read_records_csv(text):
    """Parse CSV written by :func:`records_to_csv` back into records."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        def num(key, cast=int):
            return None if row[key] == "" else cast(row[key])
        out.append(ExperimentRecord(
            int(row["d"]), int(row["n"]), int(row["sample"]), int(row["seed"]),
            row["mode"], num("genus_lower"), num("genus_upper"), num("F"), num("E"),
            num("cycles_le_m"), int(row["m"]), num("elapsed_ms", float), row["status"]))
    return out


@dataclass
class SummaryRow:
    d: int
    n: int
    records: int
    alpha_mean: float
    alpha_std: float
    f_over_e_mean: float
    f_over_e_std: float
    alpha_asymptote: float


def summarize(records):
    """Per-(d, n) mean and population standard deviation of alpha and F/E."""
    if not records:
        raise ValueError("no records to summarize")
    groups = {}
    for rec in records:
        if rec.witness_backed:
            groups.setdefault((rec.d, rec.n), []).append(rec)
    rows = []
    for (d, n), recs in sorted(groups.items()):
        alphas = [r.alpha for r in recs]
        ratios = [r.f_over_e for r in recs]
        rows.append(SummaryRow(d, n, len(recs),
                               statistics.fmean(alphas), statistics.pstdev(alphas),
                               statistics.fmean(ratios), statistics.pstdev(ratios),
                               theoretical_alpha(d)))
    if not rows:
        raise ValueError("no witness-backed records to summarize")
    return rows


def summary_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for row in rows:
        writer.writerow([getattr(row, c) for c in SUMMARY_COLUMNS])
    return buf.getvalue()


def summary_to_gnuplot(rows):
    """Whitespace-separated plot series, one line per n, with a ``#`` header."""
    lines = ["# n alpha_mean alpha_std f_over_e_mean alpha_asymptote"]
    for r in rows:
        lines.append(f"{r.n} {r.alpha_mean!r} {r.alpha_std!r} {r.f_over_e_mean!r} "
                     f"{r.alpha_asymptote!r}")
    return "\n".join(lines) + "\n"
