"""Adjacency and Hashimoto spectra, threshold counting, and classification.

Dense solvers handle graphs up to DENSE_EIG_LIMIT vertices (or directed
edges, for the Hashimoto matrix).  Beyond that only counting queries are
supported: the dense path counts through the inertia of a shifted LDL^T
factorization; the sparse path walks down the top of the spectrum with an
iterative extremal eigensolver, since symmetric factorization of expander
adjacencies fills in catastrophically.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
import scipy.sparse.linalg as spla

from .errors import (
    FactorizationBreakdown,
    MethodUnsupported,
    TooLarge,
    UnmatchedOldEigenvalue,
)
from .graphs import (
    adjacency_matrix,
    adjacency_sparse,
    graph_counts,
    hashimoto_matrix,
    regularity,
)

DENSE_EIG_LIMIT = 4096


def default_tolerances(d):
    """(real_tol, special_tol, threshold_tol) used by the classifiers."""
    return 1e-8 * (d - 1), 1e-8 * d, 1e-9 * d


@dataclass(frozen=True)
class SpectrumReport:
    """Full spectra of one regular graph."""

    adjacency_eigenvalues: np.ndarray  # descending
    hashimoto_eigenvalues: np.ndarray  # complex, arbitrary order
    d: int


@dataclass(frozen=True)
class NonRamanujanReport:
    h_positive: int
    h_negative: int
    a_positive: int
    a_negative: int
    witnesses: list = field(default_factory=list)

    @property
    def is_ramanujan(self):
        return (
            self.h_positive == 0
            and self.h_negative == 0
            and self.a_positive == 0
            and self.a_negative == 0
        )


def adjacency_spectrum(g, limit=DENSE_EIG_LIMIT):
    """All adjacency eigenvalues, descending."""
    if g.vertex_count > limit:
        raise TooLarge(
            f"dense eigensolve limited to {limit} vertices; "
            "use count_adjacency_eigenvalues_geq"
        )
    if g.vertex_count == 0:
        return np.array([])
    w = np.linalg.eigvalsh(adjacency_matrix(g).astype(float))
    return w[::-1]


def _inertia_positive_dense(A, shift):
    """Number of eigenvalues of A strictly above shift, via LDL^T inertia.

    Returns (count_above, zero_pivots): pivots within a tiny band of zero
    signal an eigenvalue essentially at the shift.
    """
    n = A.shape[0]
    _, D, _ = sla.ldl(A - shift * np.eye(n))
    scale = max(1.0, float(np.max(np.abs(A))) + abs(shift))
    zero_band = 1e-12 * scale
    pos = zeros = 0
    i = 0
    while i < n:
        off = D[i + 1, i] if i + 1 < n else 0.0
        if abs(off) <= zero_band:
            piv = D[i, i]
            if piv > zero_band:
                pos += 1
            elif piv >= -zero_band:
                zeros += 1
            i += 1
        else:
            # 2x2 block: eigenvalue signs from trace and determinant
            a, b, c = D[i, i], off, D[i + 1, i + 1]
            det = a * c - b * b
            tr = a + c
            if det < -zero_band * zero_band:
                pos += 1
            elif det > zero_band * zero_band:
                if tr > 0:
                    pos += 2
            else:
                zeros += 1
                if tr > zero_band:
                    pos += 1
            i += 2
    return pos, zeros


def top_adjacency_eigenvalues(g, threshold, tol=1e-8, seed=12345):
    """Descending top eigenvalues down past `threshold`, iteratively.

    Walks the top of the spectrum with ARPACK, doubling k until the
    smallest converged value drops below the threshold.  The Lanczos start
    vector is seeded so results are reproducible run to run.
    """
    A = adjacency_sparse(g)
    n = g.vertex_count
    v0 = np.random.default_rng(seed).standard_normal(n)
    k = 8
    while True:
        k = min(k, n - 1)
        vals = spla.eigsh(
            A, k=k, which="LA", return_eigenvectors=False, tol=tol, v0=v0
        )
        vals = np.sort(vals)[::-1]
        if vals[-1] < threshold:
            return vals
        if k >= n - 1:
            # ARPACK cannot ask for all n; fetch the bottom value so a
            # threshold below the whole spectrum still counts n, not n-1
            bottom = spla.eigsh(
                A, k=1, which="SA", return_eigenvectors=False, tol=tol, v0=v0
            )
            return np.concatenate([vals, bottom])
        k *= 2


def _count_geq_sparse(g, threshold):
    vals = top_adjacency_eigenvalues(g, threshold)
    return int(np.sum(vals >= threshold))


def count_adjacency_eigenvalues_geq(g, t, tol, limit=DENSE_EIG_LIMIT):
    """Number of adjacency eigenvalues lambda with lambda >= t - tol.

    Dense graphs go through shifted LDL^T inertia; larger graphs through
    the iterative top-of-spectrum count.  A pivot at the shift means an
    eigenvalue sits exactly at t - tol; the shift is then nudged down so
    the count keeps its ">=" meaning.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if g.vertex_count == 0:
        return 0
    shift = t - tol
    if g.vertex_count > limit:
        return _count_geq_sparse(g, shift)
    A = adjacency_matrix(g).astype(float)
    jitter = max(1e-12, 1e-9 * max(1.0, abs(shift)))
    for attempt in range(4):
        try:
            pos, zeros = _inertia_positive_dense(A, shift - attempt * jitter)
        except Exception as exc:  # LAPACK breakdown
            if attempt == 3:
                raise FactorizationBreakdown(str(exc)) from exc
            continue
        if zeros == 0:
            return pos
        # eigenvalue at the shift: move the shift down to include it
    raise FactorizationBreakdown("persistent zero pivots at jittered shifts")


def hashimoto_spectrum(g, method="direct", limit=DENSE_EIG_LIMIT):
    """Complex multiset (array) of Hashimoto eigenvalues.

    direct: dense eigensolve of the Hashimoto matrix.
    ihara:  for regular graphs, quadratic roots mu^2 - lambda*mu + (d-1)
            per adjacency eigenvalue, plus -1 per half-loop, plus +-1 with
            multiplicity |pair| - |V| (negative multiplicity cancels
            against matching quadratic roots).
    """
    counts = graph_counts(g)
    m = g.directed_edge_count
    if method == "direct":
        if m > limit:
            raise TooLarge(f"dense Hashimoto eigensolve limited to {limit} edges")
        if m == 0:
            return np.array([], dtype=complex)
        return np.linalg.eigvals(hashimoto_matrix(g).astype(float))
    if method != "ihara":
        raise MethodUnsupported(f"unknown method {method!r}")
    d = regularity(g)
    if d is None:
        raise MethodUnsupported("ihara method needs a regular graph")
    lam = adjacency_spectrum(g, limit=limit)
    roots = []
    for lv in lam:
        disc = complex(lv * lv - 4 * (d - 1))
        s = np.sqrt(disc)
        roots.append((lv + s) / 2)
        roots.append((lv - s) / 2)
    vals = list(np.asarray(roots, dtype=complex))
    vals.extend([-1.0 + 0j] * counts.half_loops)
    extra = counts.pairs - counts.vertices
    if extra >= 0:
        vals.extend([1.0 + 0j] * extra)
        vals.extend([-1.0 + 0j] * extra)
    else:
        for target in (1.0, -1.0):
            for _ in range(-extra):
                _remove_nearest(vals, target, tol=1e-6)
    return np.asarray(vals, dtype=complex)


def _remove_nearest(vals, target, tol):
    best, best_dist = None, None
    for i, v in enumerate(vals):
        dist = abs(v - target)
        if best is None or dist < best_dist:
            best, best_dist = i, dist
    if best is None or best_dist > tol:
        raise UnmatchedOldEigenvalue(
            f"no eigenvalue within {tol} of {target} to cancel"
        )
    vals.pop(best)


def spectrum_report(g, limit=DENSE_EIG_LIMIT):
    d = regularity(g)
    if d is None:
        raise MethodUnsupported("spectrum reports need a regular graph")
    adj = adjacency_spectrum(g, limit=limit)
    m = g.directed_edge_count
    if m <= limit:
        hsh = hashimoto_spectrum(g, method="direct", limit=limit)
    else:
        hsh = hashimoto_spectrum(g, method="ihara", limit=limit)
    return SpectrumReport(adjacency_eigenvalues=adj, hashimoto_eigenvalues=hsh, d=d)


def classify_non_ramanujan(report, real_tol=None, special_tol=None):
    """Count non-Ramanujan eigenvalues on both the Hashimoto and adjacency
    sides.

    Hashimoto: real eigenvalues (|Im| <= real_tol) away from the special
    values +-1, +-sqrt(d-1), +-(d-1).  Adjacency: |lambda| strictly between
    2*sqrt(d-1) and d, with a special_tol margin on both ends.
    """
    d = report.d
    rt, st, _ = default_tolerances(d)
    real_tol = rt if real_tol is None else real_tol
    special_tol = st if special_tol is None else special_tol
    sq = np.sqrt(d - 1.0)
    special = (1.0, -1.0, sq, -sq, float(d - 1), -float(d - 1))

    h_pos = h_neg = 0
    witnesses = []
    for mu in report.hashimoto_eigenvalues:
        if abs(mu.imag) > real_tol:
            continue
        x = mu.real
        if any(abs(x - s) <= special_tol for s in special):
            continue
        if x > 0:
            h_pos += 1
        else:
            h_neg += 1
        witnesses.append(complex(mu))

    lo, hi = 2 * sq, float(d)
    a_pos = a_neg = 0
    for lam in report.adjacency_eigenvalues:
        ab = abs(lam)
        if lo + special_tol < ab < hi - special_tol:
            if lam > 0:
                a_pos += 1
            else:
                a_neg += 1
            witnesses.append(float(lam))
    return NonRamanujanReport(
        h_positive=h_pos,
        h_negative=h_neg,
        a_positive=a_pos,
        a_negative=a_neg,
        witnesses=witnesses,
    )


def is_epsilon_spectral(report, eps, real_tol=None, special_tol=None):
    """True iff every real Hashimoto eigenvalue is a special value or lies
    within relative eps of +-sqrt(d-1) (sign-symmetric reading)."""
    d = report.d
    rt, st, _ = default_tolerances(d)
    real_tol = rt if real_tol is None else real_tol
    special_tol = st if special_tol is None else special_tol
    sq = np.sqrt(d - 1.0)
    special = (1.0, -1.0, float(d - 1), -float(d - 1))
    for mu in report.hashimoto_eigenvalues:
        if abs(mu.imag) > real_tol:
            continue
        x = mu.real
        if any(abs(x - s) <= special_tol for s in special):
            continue
        if abs(1.0 - abs(x) / sq) >= eps:
            return False
    return True


def _multiset_difference(total, base, tol_scale=1e-6):
    """Greedy nearest-match removal of base values from total."""
    rem = list(total)
    for b in base:
        best, best_dist = None, None
        for i, v in enumerate(rem):
            dist = abs(v - b)
            if best is None or dist < best_dist:
                best, best_dist = i, dist
        tol = tol_scale * max(1.0, abs(b))
        if best is None or best_dist > tol:
            raise UnmatchedOldEigenvalue(
                f"base eigenvalue {b} has no partner within {tol}"
            )
        rem.pop(best)
    return rem


def new_spectra(c, limit=DENSE_EIG_LIMIT):
    """(new adjacency, new Hashimoto) spectra of a covering map, as the
    multiset differences total-minus-base."""
    adj_t = adjacency_spectrum(c.total, limit=limit)
    adj_b = adjacency_spectrum(c.base, limit=limit)
    new_adj = np.asarray(
        sorted(_multiset_difference(adj_t, adj_b), reverse=True)
    )
    hsh_t = hashimoto_spectrum(c.total, method="direct", limit=limit)
    hsh_b = hashimoto_spectrum(c.base, method="direct", limit=limit)
    new_hsh = np.asarray(
        _multiset_difference(list(hsh_t), list(hsh_b)), dtype=complex
    )
    return new_adj, new_hsh
