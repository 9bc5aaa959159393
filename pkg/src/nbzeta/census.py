"""Seeded Monte Carlo censuses of threshold eigenvalue counts.

Each sample draws a graph from the configured model with a seed derived
from (master_seed, sample_index), counts eigenvalues at or above the
Ramanujan threshold 2*sqrt(d-1) (or strict non-Ramanujan counts), and
records (index, seed, count, lambda1, lambda2).  Reruns with the same
config are byte-identical and longer runs extend shorter ones record for
record.
"""

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np

from .errors import InvalidParams, TooLarge
from .graphs import adjacency_matrix, parse_graph, regularity
from .models import (
    sample_cover,
    sample_matching_model,
    sample_permutation_model,
    sample_single_cycle_model,
)
from .rng import derive_seed
from .spectra import (
    DENSE_EIG_LIMIT,
    default_tolerances,
    new_spectra,
    top_adjacency_eigenvalues,
)

PAPER_SECTION8 = {
    # preset: (model, n, paper mean, paper sample count)
    "G4_100": ("perm", 100, 1.2681, 10_000),
    "G4_1000": ("perm", 1000, 1.2258, 10_000),
    "G4_10000": ("perm", 10_000, 1.1942, 10_000),
    "H4_100": ("cycle", 100, 1.1268, 10_000),
    "H4_1000": ("cycle", 1000, 1.161, 10_000),
    "H4_10000": ("cycle", 10_000, 1.1693, 10_000),
}


@dataclass(frozen=True)
class CensusConfig:
    model: str                      # perm | cycle | match | cover
    d: int
    n: int
    samples: int
    master_seed: int
    mode: str = "at_least_2sqrt"    # or "strict_nonramanujan"
    base_graph_text: str = None     # required for cover
    threshold_tol: float = None     # default 1e-9 * d
    workers: int = 1

    def validate(self):
        if self.model not in ("perm", "cycle", "match", "cover"):
            raise InvalidParams(f"unknown model {self.model!r}")
        if self.mode not in ("at_least_2sqrt", "strict_nonramanujan"):
            raise InvalidParams(f"unknown mode {self.mode!r}")
        if self.samples < 1:
            raise InvalidParams("samples must be >= 1")
        if self.model == "perm" and (self.d % 2 or self.d < 4):
            raise InvalidParams("perm model needs even d >= 4")
        if self.model == "cycle" and (self.d % 2 or self.d < 4 or self.n < 2):
            raise InvalidParams("cycle model needs even d >= 4 and n >= 2")
        if self.model == "match" and (self.n % 2 or self.d < 3):
            raise InvalidParams("match model needs even n and d >= 3")
        if self.model == "cover" and not self.base_graph_text:
            raise InvalidParams("cover model needs a base graph file")
        return self


@dataclass(frozen=True)
class SampleRecord:
    sample: int
    seed: int
    count: int
    lambda1: float
    lambda2: float


@dataclass(frozen=True)
class CensusResult:
    config: CensusConfig
    records: list
    mean: float
    stderr: float
    samples: int
    failures: int


def _one_sample(args):
    (model, n, d, mode, base_text, threshold_tol, master_seed, index) = args
    seed = derive_seed(master_seed, index)
    cover = None
    if model == "perm":
        g = sample_permutation_model(n, d, seed)
    elif model == "cycle":
        g = sample_single_cycle_model(n, d, seed)
    elif model == "match":
        g = sample_matching_model(n, d, seed)
    else:
        cover = sample_cover(parse_graph(base_text), n, seed)
        g = cover.total
    d_eff = regularity(g)
    tol = threshold_tol if threshold_tol is not None else 1e-9 * d_eff
    threshold = 2 * math.sqrt(d_eff - 1)

    if g.vertex_count <= DENSE_EIG_LIMIT:
        w = np.linalg.eigvalsh(adjacency_matrix(g).astype(float))[::-1]
        top = w
    else:
        # one seeded Lanczos run serves both the record fields and the count
        w = None
        top = top_adjacency_eigenvalues(g, threshold - tol, seed=seed)
    lam1 = float(top[0])
    lam2 = float(top[1]) if len(top) > 1 else float("nan")

    counted = None
    if cover is not None:
        counted, _ = new_spectra(cover)
    elif w is not None:
        counted = w

    if mode == "at_least_2sqrt":
        if counted is not None:
            count = int(np.sum(np.asarray(counted) >= threshold - tol))
        else:
            count = int(np.sum(top >= threshold - tol))
    else:
        if counted is None:
            raise TooLarge("strict mode needs the dense spectrum")
        _, special_tol, _ = default_tolerances(d_eff)
        vals = np.asarray(counted)
        in_window = np.sum(
            (vals > threshold + special_tol) & (vals < d_eff - special_tol)
        )
        at_threshold = np.sum(np.abs(vals - threshold) <= special_tol)
        count = int(in_window + at_threshold)
    return SampleRecord(
        sample=index,
        seed=seed,
        count=int(count),
        lambda1=lam1,
        lambda2=lam2,
    )


def run_census(config, out_path=None, progress=None):
    """Run the census; optionally stream records to a CSV file as they
    complete (in sample order) and write an aggregate JSON next to it."""
    config.validate()
    tasks = [
        (
            config.model, config.n, config.d, config.mode,
            config.base_graph_text, config.threshold_tol,
            config.master_seed, i,
        )
        for i in range(config.samples)
    ]
    records, failures = [], 0
    sink = open(out_path, "w", newline="") if out_path else None
    writer = None
    if sink is not None:
        writer = csv.writer(sink)
        writer.writerow(["sample", "seed", "count", "lambda1", "lambda2"])
    try:
        if config.workers > 1:
            # threads, not processes: the per-sample work is dominated by
            # LAPACK/ARPACK calls that release the GIL, samples share no
            # mutable state, and map() preserves sample order for the CSV
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                results = pool.map(_one_sample_safe, tasks)
                for rec in results:
                    failures += _consume(rec, records, writer, progress)
        else:
            for task in tasks:
                failures += _consume(
                    _one_sample_safe(task), records, writer, progress
                )
    finally:
        if sink is not None:
            sink.close()
    counts = np.asarray([r.count for r in records], dtype=float)
    mean = float(counts.mean()) if len(counts) else float("nan")
    stderr = (
        float(counts.std(ddof=1) / math.sqrt(len(counts)))
        if len(counts) > 1
        else 0.0
    )
    result = CensusResult(
        config=config,
        records=records,
        mean=mean,
        stderr=stderr,
        samples=len(records),
        failures=failures,
    )
    if out_path:
        with open(str(out_path) + ".json", "w") as fh:
            fh.write(aggregate_json(result))
    return result


def _one_sample_safe(task):
    try:
        return _one_sample(task)
    except Exception as exc:  # per-sample failure: record and drop
        return (task[-1], repr(exc))


def _consume(rec, records, writer, progress):
    if isinstance(rec, SampleRecord):
        records.append(rec)
        if writer is not None:
            writer.writerow(
                [
                    rec.sample,
                    rec.seed,
                    rec.count,
                    _fmt(rec.lambda1),
                    _fmt(rec.lambda2),
                ]
            )
        if progress is not None:
            progress(rec)
        return 0
    return 1


def _fmt(x):
    return f"{x:.12g}"


def records_csv(result):
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["sample", "seed", "count", "lambda1", "lambda2"])
    for rec in result.records:
        w.writerow(
            [rec.sample, rec.seed, rec.count, _fmt(rec.lambda1), _fmt(rec.lambda2)]
        )
    return buf.getvalue()


def aggregate_json(result):
    cfg = asdict(result.config)
    cfg.pop("base_graph_text", None)
    return json.dumps(
        {
            "config": cfg,
            "mean": result.mean,
            "stderr": result.stderr,
            "samples": result.samples,
            "failures": result.failures,
        },
        indent=2,
        sort_keys=True,
    ) + "\n"


@dataclass(frozen=True)
class Section8Row:
    preset: str
    n: int
    model: str
    paper_mean: float
    paper_samples: int
    computed_mean: float
    stderr: float
    samples: int
    z_score: float


def reproduce_section8(preset, samples_override=None, seed=0, workers=1):
    """Compare a computed census against one of the published table rows.

    The z-score combines this run's standard error with the paper's
    binomial-scale uncertainty at its own sample count.
    """
    if preset not in PAPER_SECTION8:
        raise InvalidParams(f"unknown preset {preset!r}; have {sorted(PAPER_SECTION8)}")
    model, n, paper_mean, paper_samples = PAPER_SECTION8[preset]
    samples = samples_override if samples_override else paper_samples
    config = CensusConfig(
        model=model, d=4, n=n, samples=samples, master_seed=seed, workers=workers
    )
    result = run_census(config)
    counts = np.asarray([r.count for r in result.records], dtype=float)
    paper_var = float(counts.var(ddof=1)) if len(counts) > 1 else 0.25
    paper_stderr = math.sqrt(paper_var / paper_samples)
    denom = math.sqrt(result.stderr ** 2 + paper_stderr ** 2)
    z = (result.mean - paper_mean) / denom if denom > 0 else float("inf")
    return Section8Row(
        preset=preset,
        n=n,
        model=model,
        paper_mean=paper_mean,
        paper_samples=paper_samples,
        computed_mean=result.mean,
        stderr=result.stderr,
        samples=result.samples,
        z_score=z,
    )


def section8_table(rows):
    header = (
        f"{'preset':10s} {'model':6s} {'n':>7s} {'paper':>8s} "
        f"{'computed':>10s} {'stderr':>8s} {'z':>7s}"
    )
    lines = [header]
    for r in rows:
        lines.append(
            f"{r.preset:10s} {r.model:6s} {r.n:7d} {r.paper_mean:8.4f} "
            f"{r.computed_mean:10.4f} {r.stderr:8.4f} {r.z_score:7.2f}"
        )
    return "\n".join(lines)
