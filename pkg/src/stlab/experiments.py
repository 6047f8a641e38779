"""Experiment orchestration: runs one configured experiment, emits CSV/JSON
and plot-data files, and records a manifest with per-file digests.

Identical config + seed produces byte-identical data outputs; manifests can
differ in wall time only.  Sample fan-out across workers (STLAB_THREADS)
never changes bytes because every sample index owns its stream and results
are assembled in index order.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
import time
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path

import numpy as np

from . import __version__
from .ballsbins import (
    Band,
    BoundParams,
    degree_stats,
    delta_limit,
    exact_count_expectation,
    exact_count_variance,
    expectation_band,
    gamma_threshold,
    median_band,
    poisson_reference,
    sample_assignment,
    stddev_bound,
    tail_bound,
)
from .bounds import anticoncentration_bound, labeled_copies_bound, stirling_factor
from .config import ExperimentConfig
from .graphs import BipartiteGraph, Graph, generate, geometric_avg_degree
from .rng import substream
from .spanning import count_spanning_trees, kostochka_upper_log, sample_ust
from .treeiso import canonical_code, enumerate_unlabeled_trees, otter_ratio_fit

_CSV_KW = dict(lineterminator="\n")


@dataclass(frozen=True)
class RunManifest:
    config_text: str
    version: str
    wall_time_s: float
    outputs: dict[str, str]


def worker_count() -> int:
    """Worker cap from STLAB_THREADS (unset = 1, 0 = auto)."""
    raw = os.environ.get("STLAB_THREADS", "1")
    try:
        val = int(raw)
    except ValueError:
        raise RuntimeError(f"STLAB_THREADS must be an integer, got {raw!r}")
    if val < 0:
        raise RuntimeError("STLAB_THREADS must be nonnegative")
    return os.cpu_count() or 1 if val == 0 else val


def _census_worker(args):
    g, seed, lo, hi = args
    return [canonical_code(sample_ust(g, substream(seed, i))) for i in range(lo, hi)]


def _loads_worker(args):
    h, kmax, seed, lo, hi = args
    rows = []
    for i in range(lo, hi):
        st = degree_stats(sample_assignment(h, substream(seed, i)), kmax)
        rows.append(st.counts)
    return rows


def _map_chunks(worker, shared, total: int):
    """Run `worker` over index ranges, in order, across up to worker_count()
    processes; the concatenated result is independent of the worker count."""
    workers = min(worker_count(), total)
    if workers <= 1:
        return worker(shared + (0, total))
    step = (total + workers - 1) // workers
    tasks = [shared + (lo, min(lo + step, total)) for lo in range(0, total, step)]
    with Pool(workers) as pool:
        parts = pool.map(worker, tasks)
    out = []
    for p in parts:
        out.extend(p)
    return out


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8", newline="\n")


def _write_csv(path: Path, header: list[str], rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, **_CSV_KW)
    w.writerow(header)
    w.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8", newline="\n")


def emit_plotdata(series: dict[str, list[tuple[float, float]]], out_dir: Path) -> list[Path]:
    """One two-column whitespace-separated file per series, `<name>.dat`."""
    if not series:
        raise ValueError("empty plot summary")
    paths = []
    for name, points in series.items():
        if not points:
            raise ValueError(f"series {name!r} is empty")
        path = Path(out_dir) / f"{name}.dat"
        lines = [f"{x} {y}" for x, y in points]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
        paths.append(path)
    return paths


def _band_pair(b: Band) -> list[float]:
    return [b.lo, b.hi]


def _run_count(cfg: ExperimentConfig, out_dir: Path) -> None:
    g = generate(cfg.graph_spec())
    if isinstance(g, BipartiteGraph):
        g = g.to_graph()
    total = count_spanning_trees(g)
    has_min_degree = g.n >= 2 and min(g.degrees()) >= 1
    payload = {
        "family": cfg.family or "from-file",
        "n": g.n,
        "m": g.m,
        "spanning_trees": str(total),
        "log_spanning_trees": _log_int(total) if total > 0 else None,
        "geometric_avg_degree": geometric_avg_degree(g) if has_min_degree else None,
        "kostochka_upper_log": kostochka_upper_log(g) if has_min_degree else None,
    }
    _write_json(out_dir / "count.json", payload)


def _log_int(value: int) -> float:
    # math.log overflows float conversion beyond ~1e308; go via int.bit_length
    if value <= 0:
        raise ValueError("log of a nonpositive count")
    if value.bit_length() <= 1000:
        return math.log(value)
    shift = value.bit_length() - 64
    return math.log(value >> shift) + shift * math.log(2.0)


def _run_sample_census(cfg: ExperimentConfig, out_dir: Path) -> None:
    g = generate(cfg.graph_spec())
    if isinstance(g, BipartiteGraph):
        g = g.to_graph()
    codes = _map_chunks(_census_worker, (g, cfg.seed), cfg.samples)
    counts: dict[str, int] = {}
    for c in codes:
        counts[c] = counts.get(c, 0) + 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    rows = [(code, cnt, cnt / cfg.samples) for code, cnt in ranked]
    _write_csv(out_dir / "census.csv", ["canon_code", "count", "probability"], rows)
    payload = {
        "n": g.n,
        "samples": cfg.samples,
        "classes": len(ranked),
        "max_class_probability": rows[0][2] if rows else 0.0,
        "anticoncentration_bound": anticoncentration_bound(g.n),
    }
    _write_json(out_dir / "census_summary.json", payload)
    emit_plotdata(
        {"census": [(float(i + 1), r[2]) for i, r in enumerate(rows)]},
        out_dir,
    )


def _run_balls_bins(cfg: ExperimentConfig, out_dir: Path) -> None:
    h = generate(cfg.graph_spec())
    if not isinstance(h, BipartiteGraph):
        raise ValueError("balls-bins experiment needs a bipartite graph")
    kmax = cfg.kmax
    per_sample = _map_chunks(_loads_worker, (h, kmax, cfg.seed), cfg.samples)

    raw_rows = []
    for i, counts in enumerate(per_sample):
        for k in range(kmax + 1):
            raw_rows.append((i, k, counts[k]))
    _write_csv(out_dir / "samples.csv", ["sample_index", "k", "I_k"], raw_rows)

    mat = np.array(per_sample, dtype=np.float64)
    means = mat.mean(axis=0)
    variances = mat.var(axis=0, ddof=1) if cfg.samples > 1 else np.zeros(kmax + 1)
    exact_means = [float(exact_count_expectation(h, k)) for k in range(kmax + 1)]
    do_exact_var = h.ny <= cfg.exact_cap
    summary_rows = []
    for k in range(kmax + 1):
        exact_var = float(exact_count_variance(h, k)) if do_exact_var else ""
        summary_rows.append(
            (
                k,
                float(means[k]),
                float(variances[k]),
                exact_means[k],
                exact_var,
                poisson_reference(k) * h.ny,
            )
        )
    _write_csv(
        out_dir / "summary.csv",
        ["k", "mean", "var", "exact_mean", "exact_var", "poisson_ref"],
        summary_rows,
    )

    reports = []
    for k in range(kmax + 1):
        for gamma in cfg.gammas or (0.0,):
            reports.append(_bound_report(k, cfg.delta, gamma, h.ny))
    _write_json(out_dir / "bounds.json", reports)

    emit_plotdata(
        {
            "empirical": [(float(k), float(means[k]) / h.ny) for k in range(kmax + 1)],
            "poisson_ref": [(float(k), poisson_reference(k)) for k in range(kmax + 1)],
        },
        out_dir,
    )


def _bound_report(k: int, delta: float, gamma: float, n: int) -> dict:
    """One load-level bound report; inadmissible parameter combinations keep
    the schema with null bound values."""
    report = {
        "k": k,
        "m": k,
        "delta": delta,
        "gamma": gamma,
        "n": n,
        "thm21_bound": None,
        "lemma23_band": None,
        "lemma24_sd_bound": None,
        "lemma25_band": None,
        "admissible": True,
        "asymptotic_only": delta == 0.0,
    }
    try:
        p = BoundParams(k=k, m=k, delta=delta, gamma=gamma, n=n)
    except ValueError as e:
        report["admissible"] = False
        report["note"] = str(e)
        return report
    report["lemma23_band"] = _band_pair(expectation_band(p))
    report["lemma24_sd_bound"] = stddev_bound(p)
    report["lemma25_band"] = _band_pair(median_band(p))
    try:
        report["thm21_bound"] = tail_bound(p)
    except ValueError as e:
        report["admissible"] = False
        report["note"] = str(e)
    return report


def _run_bounds(cfg: ExperimentConfig, out_dir: Path) -> None:
    delta = cfg.delta if cfg.delta > 0 else 1e-10
    rep = labeled_copies_bound(cfg.n, cfg.leaves, cfg.d, delta)
    payload = rep.to_json_dict()
    payload["anticoncentration_bound"] = anticoncentration_bound(cfg.n)
    payload["stirling_factor"] = stirling_factor(cfg.d)
    _write_json(out_dir / "bound_report.json", payload)


def _run_enumerate_trees(cfg: ExperimentConfig, out_dir: Path) -> None:
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        rows.append((n, len(enumerate_unlabeled_trees(n))))
    _write_csv(out_dir / "tree_counts.csv", ["n", "count"], rows)


def _run_otter_fit(cfg: ExperimentConfig, out_dir: Path) -> None:
    counts = {n: len(enumerate_unlabeled_trees(n)) for n in range(cfg.n_min, cfg.n_max + 1)}
    fit = otter_ratio_fit(counts)
    payload = {
        "n_range": [cfg.n_min, cfg.n_max],
        "counts": list(fit.counts),
        "ratios": list(fit.ratios),
        "alpha_hat": fit.alpha_hat,
        "C_hat": fit.c_hat,
    }
    _write_json(out_dir / "otter.json", payload)


_RUNNERS = {
    "count": _run_count,
    "sample-census": _run_sample_census,
    "balls-bins": _run_balls_bins,
    "bounds": _run_bounds,
    "enumerate-trees": _run_enumerate_trees,
    "otter-fit": _run_otter_fit,
}


def run(cfg: ExperimentConfig) -> RunManifest:
    """Execute one experiment; writes all outputs plus manifest.json."""
    from .config import render_config

    cfg.validate()
    start = time.perf_counter()
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _RUNNERS[cfg.kind](cfg, out_dir)
    wall = time.perf_counter() - start

    digests = {}
    for path in sorted(out_dir.iterdir()):
        if path.name == "manifest.json" or not path.is_file():
            continue
        digests[path.name] = hashlib.sha256(path.read_bytes()).hexdigest()
    manifest = RunManifest(render_config(cfg), __version__, wall, digests)
    _write_json(
        out_dir / "manifest.json",
        {
            "tool": "stlab",
            "version": manifest.version,
            "wall_time_s": manifest.wall_time_s,
            "config": manifest.config_text,
            "outputs": manifest.outputs,
        },
    )
    return manifest
