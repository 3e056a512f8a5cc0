"""Parameter sweeps over the selection probability, with theory columns.

Each (epsilon index, trial index) pair gets its own seed,
``derive_seed(master, ei, ti) = mix64(mix64(mix64(master) ^ ei) ^ ti)``, so
results do not depend on execution order or worker count, and appending grid
points leaves earlier seeds untouched.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from math import factorial
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .branching import survival_probability
from .cayley import CayleyGraph
from .errors import CapabilityError, InputDomainError
from .generators import from_spec
from .percolation import DEFAULT_MAX_N, PercolationParams, percolate

SCHEMA_LINE = "# cayley-perc v1"


def derive_seed(master_seed: int, *indices: int) -> int:
    h = kernels.mix64(master_seed)
    for idx in indices:
        h = kernels.mix64(h ^ idx)
    return h


def epsilon_grid(eps_min: float, eps_max: float, steps: int) -> list[float]:
    if steps < 1:
        raise InputDomainError("eps-steps must be >= 1")
    if steps == 1:
        return [float(eps_min)]
    return [float(x) for x in np.linspace(eps_min, eps_max, steps)]


@dataclass
class SweepConfig:
    n: int = 9
    tree_spec: str = "star"
    epsilon_grid: list[float] = field(default_factory=lambda: epsilon_grid(0.05, 1.0, 20))
    trials: int = 20
    master_seed: int = 0
    k: int = 1
    delta: float = 0.1
    c_k: float = 1.0
    output_path: str | None = None
    format: str = "csv"
    lambda_grid: list[float] | None = None
    workers: int = 1
    allow_large: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise InputDomainError("trials must be >= 1")
        if self.format not in ("csv", "json"):
            raise InputDomainError(f"unknown format {self.format!r}")
        for _, lam in self.points():
            if not 0.0 <= lam <= 1.0:
                raise InputDomainError(f"lambda = {lam} outside [0, 1] for n={self.n}")

    def points(self) -> list[tuple[float, float]]:
        """``(epsilon, lambda)`` pairs in grid order."""
        if self.lambda_grid is not None:
            return [(lam * (self.n - 1) - 1.0, float(lam)) for lam in self.lambda_grid]
        return [(float(e), (1.0 + e) / (self.n - 1)) for e in self.epsilon_grid]


@dataclass(frozen=True)
class SweepRow:
    n: int
    tree_id: str
    epsilon: float
    lambda_: float
    trial: int
    seed: int
    selected_count: int
    largest: int
    second_largest: int
    num_components: int
    relative_giant: float
    predicted_survival: float
    predicted_giant: float
    gamma_nk_count: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lambda_")
        return {name: d[name] for name in COLUMNS}


COLUMNS = [f.name.rstrip("_") for f in fields(SweepRow)]
_INT_COLUMNS = {"n", "trial", "seed", "selected_count", "largest", "second_largest",
                "num_components", "gamma_nk_count"}


def theory_columns(n: int, epsilon: float, lam: float) -> tuple[float, float]:
    """``(wp(eps), wp(eps) * lam * n!)``."""
    surv = survival_probability(epsilon)
    return surv, surv * lam * factorial(n)


def run_sweep(cfg: SweepConfig) -> list[SweepRow]:
    tree = from_spec(cfg.tree_spec, cfg.n)
    graph = CayleyGraph(tree)
    points = cfg.points()
    tasks = [(ei, ti) for ei in range(len(points)) for ti in range(cfg.trials)]

    def run_one(task):
        ei, ti = task
        eps, lam = points[ei]
        seed = derive_seed(cfg.master_seed, ei, ti)
        params = PercolationParams(cfg.n, eps, seed=seed, k=cfg.k, delta=cfg.delta, c_k=cfg.c_k, lam=lam)
        try:
            rep = percolate(graph, params, max_n=DEFAULT_MAX_N, allow_large=cfg.allow_large).report
        except CapabilityError as exc:
            raise CapabilityError(f"n={cfg.n}, epsilon={eps}: {exc}") from exc
        surv, giant = theory_columns(cfg.n, eps, lam)
        return SweepRow(cfg.n, cfg.tree_spec, eps, lam, ti, seed, rep.selected_count, rep.largest,
                        rep.second_largest, rep.num_components, rep.relative_giant, surv, giant,
                        rep.gamma_nk_count)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(run_one, tasks))
    else:
        rows = [run_one(t) for t in tasks]
    if cfg.output_path:
        write_rows(rows, cfg.output_path, cfg.format)
    return rows


# --- serialization ------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    buf.write(SCHEMA_LINE + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        d = row.as_dict()
        writer.writerow([_fmt(d[c]) for c in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: Iterable[SweepRow]) -> str:
    return json.dumps([row.as_dict() for row in rows], indent=1) + "\n"


def write_rows(rows: Sequence[SweepRow], path, fmt: str = "csv") -> None:
    """Serialize then atomically rename into place."""
    text = rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows)
    write_atomic(path, text)


def write_atomic(path, text: str) -> None:
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _row_from_dict(d: dict) -> SweepRow:
    vals = {}
    for c in COLUMNS:
        v = d[c]
        vals["lambda_" if c == "lambda" else c] = int(v) if c in _INT_COLUMNS else (
            str(v) if c == "tree_id" else float(v))
    return SweepRow(**vals)


def read_rows(path) -> list[SweepRow]:
    text = Path(path).read_text()
    if text.lstrip().startswith("["):
        return [_row_from_dict(d) for d in json.loads(text)]
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return [_row_from_dict(d) for d in csv.DictReader(lines)]


# --- aggregation and plotting ----------------------------------------------------

def summarize(rows: Sequence[SweepRow]) -> list[dict]:
    """Per-epsilon means in grid order."""
    groups: dict[float, list[SweepRow]] = {}
    for row in rows:
        groups.setdefault(row.epsilon, []).append(row)
    out = []
    for eps, grp in groups.items():
        rel = np.array([r.relative_giant for r in grp])
        largest = np.array([r.largest for r in grp], dtype=float)
        out.append({
            "epsilon": eps,
            "lambda": grp[0].lambda_,
            "trials": len(grp),
            "mean_relative_giant": float(rel.mean()),
            "std_relative_giant": float(rel.std(ddof=1)) if len(grp) > 1 else 0.0,
            "mean_largest": float(largest.mean()),
            "rsd_largest": float(largest.std(ddof=1) / largest.mean()) if len(grp) > 1 and largest.mean() else 0.0,
            "predicted_survival": grp[0].predicted_survival,
        })
    return out


def emit_plot(rows: Sequence[SweepRow], path) -> None:
    """SVG of the mean relative giant size against lambda, with the predicted curve."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not rows:
        raise InputDomainError("no rows to plot")
    keys = {(r.n, r.tree_id) for r in rows}
    if len(keys) != 1:
        raise InputDomainError(f"rows mix several (n, tree) pairs: {sorted(keys)}")
    n, tree_id = keys.pop()
    summary = summarize(rows)
    lam = np.array([s["lambda"] for s in summary])
    data = np.array([s["mean_relative_giant"] for s in summary])

    lo, hi = float(lam.min()), float(lam.max())
    if hi - lo < 1e-9:
        lo, hi = max(0.0, lo - 0.5 / (n - 1)), min(1.0, hi + 0.5 / (n - 1))
    grid = np.linspace(lo, hi, 400)
    theory = [survival_probability(x * (n - 1) - 1.0) for x in grid]

    plt.rcParams["svg.hashsalt"] = "cayley-perc"
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.plot(grid, theory, color="tab:red", label="predicted survival")
    ax.plot(lam, data, "o-", color="tab:blue", markersize=3, label="data")
    ax.set_xlabel(r"$(1+\epsilon)/(n-1)$")
    ax.set_ylabel(r"$|C_n^{(1)}| \,/\, |\Gamma_n|$")
    ax.set_title(f"n = {n}, tree = {tree_id}")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="lower right", frameon=False)
    fig.tight_layout()
    try:
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc}") from exc
    finally:
        plt.close(fig)
