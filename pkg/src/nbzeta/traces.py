"""Exact non-backtracking traces, the divisor-sum prediction, Monte Carlo
trace estimates, a tiny-n enumeration oracle, and 1/n expansion fits.

Tr(H^k) counts the strictly non-backtracking closed walks of length k, so
every trace here is an exact integer; estimates only average them.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IllConditioned, InvalidParams, TooLarge
from .graphs import degrees, directed_line_graph, hashimoto_matrix, hashimoto_sparse
from .models import (
    sample_cover,
    sample_matching_model,
    sample_permutation_model,
    sample_single_cycle_model,
    _permutations_to_graph,
)
from .rng import derive_seed

# numpy integer matmul bypasses BLAS; keep the dense path to small matrices
# and let scipy's sparse integer SpMM (C speed) carry everything else
_DENSE_TRACE_LIMIT = 256
_SPARSE_NNZ_BUDGET = 40_000_000


@dataclass(frozen=True)
class TraceEstimate:
    model: str
    n: int
    d: int
    k: int
    samples: int
    mean: float
    stderr: float
    master_seed: int
    values: tuple = ()


@dataclass(frozen=True)
class ExpansionFit:
    k: int
    d: int
    n_grid: tuple
    intercept: float        # estimates the n-independent trace term
    slope: float            # estimates the 1/n coefficient
    intercept_stderr: float
    slope_stderr: float
    residual_norm: float


def _max_out_degree(g):
    # line-graph out-degree of edge e is deg(head(e)) - 1
    if g.directed_edge_count == 0:
        return 0
    deg = degrees(g)
    return max(int(deg[h]) - 1 for h in g.heads.tolist())


def tr_hashimoto_power(g, k):
    """Exact Tr(H^k) as a Python int."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    m = g.directed_edge_count
    if k == 0:
        return m
    if m == 0:
        return 0
    s = max(_max_out_degree(g), 1)
    if m * s ** k >= 2 ** 62:
        raise TooLarge("entries of H^k overflow the exact int64 path")
    if m <= _DENSE_TRACE_LIMIT:
        H = hashimoto_matrix(g)
        P = H.copy()
        for _ in range(k - 1):
            P = P @ H
        return int(np.trace(P))
    # sparse split: Tr(H^k) = sum of elementwise H^a * (H^b)^T, a+b = k
    if m * (s ** ((k + 1) // 2)) > _SPARSE_NNZ_BUDGET:
        raise TooLarge("sparse trace power exceeds the fill budget")
    H = hashimoto_sparse(g)
    a = k // 2
    Pa = _sparse_power(H, a) if a else None
    if k % 2 == 0:
        return int(Pa.multiply(Pa.T).sum())
    Pb = Pa @ H if Pa is not None else H
    if Pa is None:
        return int(H.diagonal().sum())
    return int(Pa.multiply(Pb.T).sum())


def _sparse_power(H, a):
    P = H.copy()
    for _ in range(a - 1):
        P = P @ H
    return P


def count_closed_nb_walks(g, k):
    """Walk-enumeration oracle: depth-first count of strictly
    non-backtracking closed walks of length k (edge-rooted).

    Independent of the matrix-power path; use only on small graphs.
    """
    if k < 1:
        raise ValueError("oracle needs k >= 1")
    m = g.directed_edge_count
    if m > 64 or k > 8:
        raise TooLarge("walk enumeration oracle limited to 64 edges, k <= 8")
    lg = directed_line_graph(g)
    succ = [[] for _ in range(m)]
    for t, h in zip(lg.tails.tolist(), lg.heads.tolist()):
        succ[t].append(h)
    total = 0
    for start in range(m):
        stack = [(start, 0)]
        while stack:
            e, steps = stack.pop()
            if steps == k:
                if e == start:
                    total += 1
                continue
            for nxt in succ[e]:
                stack.append((nxt, steps + 1))
    return total


def p0_divisor_sum(k, d):
    """Sum of (d-1)**k' over positive divisors k' of k: the n-independent
    prediction for the expected non-backtracking trace."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return sum((d - 1) ** kp for kp in range(1, k + 1) if k % kp == 0)


def _draw_model(model, n, d, seed, base=None):
    if model == "perm":
        return sample_permutation_model(n, d, seed)
    if model == "cycle":
        return sample_single_cycle_model(n, d, seed)
    if model == "match":
        return sample_matching_model(n, d, seed)
    if model == "cover":
        if base is None:
            raise InvalidParams("cover model needs a base graph")
        return sample_cover(base, n, seed).total
    raise InvalidParams(f"unknown model {model!r}")


def estimate_expected_trace(model, n, d, k, samples, master_seed, base=None):
    """Monte Carlo mean/stderr of Tr(H^k) over seeded independent samples."""
    if samples < 1:
        raise InvalidParams("need samples >= 1")
    values = []
    for i in range(samples):
        g = _draw_model(model, n, d, derive_seed(master_seed, i), base=base)
        values.append(tr_hashimoto_power(g, k))
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    stderr = float(arr.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    return TraceEstimate(
        model=model, n=n, d=d, k=k, samples=samples,
        mean=mean, stderr=stderr, master_seed=master_seed,
        values=tuple(values),
    )


def exact_expected_trace_small(n, d, k, max_tuples=10_000_000):
    """Exact E[Tr(H^k)] for the permutation model by enumerating all
    (n!)**(d/2) permutation tuples with equal weight."""
    if d % 2 != 0 or d < 4:
        raise InvalidParams("exact enumeration covers the perm model (even d >= 4)")
    perms = list(itertools.permutations(range(n)))
    count = len(perms) ** (d // 2)
    if count > max_tuples:
        raise TooLarge(f"{count} permutation tuples exceed the enumeration guard")
    total = 0
    for tup in itertools.product(perms, repeat=d // 2):
        g = _permutations_to_graph(n, [list(p) for p in tup])
        total += tr_hashimoto_power(g, k)
    return Fraction(total, count)


def fit_expansion_coefficients(model, d, k, n_grid, samples_per_n, master_seed,
                               base=None):
    """Weighted least squares of mean trace against [1, 1/n].

    The intercept estimates the n-independent term, the slope the 1/n
    coefficient; uncertainties propagate from the per-n standard errors.
    """
    ns = list(n_grid)
    if len(ns) < 3 or len(set(ns)) < 3:
        raise IllConditioned("need at least 3 distinct n values")
    means, errs = [], []
    for i, n in enumerate(ns):
        est = estimate_expected_trace(
            model, n, d, k, samples_per_n, derive_seed(master_seed, i), base=base
        )
        means.append(est.mean)
        errs.append(est.stderr if est.stderr > 0 else 1.0)
    X = np.column_stack([np.ones(len(ns)), 1.0 / np.asarray(ns, dtype=float)])
    w = 1.0 / np.asarray(errs) ** 2
    XtWX = X.T @ (w[:, None] * X)
    if np.linalg.cond(XtWX) > 1e12:
        raise IllConditioned("grid too narrow for a stable 1/n fit")
    cov = np.linalg.inv(XtWX)
    beta = cov @ (X.T @ (w * np.asarray(means)))
    resid = np.asarray(means) - X @ beta
    return ExpansionFit(
        k=k, d=d, n_grid=tuple(ns),
        intercept=float(beta[0]), slope=float(beta[1]),
        intercept_stderr=float(np.sqrt(cov[0, 0])),
        slope_stderr=float(np.sqrt(cov[1, 1])),
        residual_norm=float(np.sqrt(np.sum(w * resid ** 2))),
    )
