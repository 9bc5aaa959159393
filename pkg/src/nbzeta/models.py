"""Seeded samplers for random regular multigraphs and random covering maps.

Models:
  perm   d/2 uniform permutations; edge {i, pi(i)} per index (whole-loop on
         a fixed point).  Even d >= 4.
  cycle  like perm but each permutation is a uniform single n-cycle.
  match  d uniform perfect matchings; n even, d >= 3.
  cover  degree-n random cover of an arbitrary base graph: a uniform
         permutation per edge orientation, a uniform (near-)perfect
         matching per half-loop.

All samplers are pure functions of (params, seed) via SplitMix64 streams.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .graphs import Graph, build_graph
from .rng import SeedStream


@dataclass(frozen=True)
class CoveringMap:
    """A degree-n covering: fibre maps from the total graph onto the base."""

    base: Graph
    total: Graph
    vertex_map: np.ndarray
    edge_map: np.ndarray
    degree: int


def _permutations_to_graph(n, perms):
    """Graph with one undirected edge {i, pi(i)} per permutation and index.

    Edge pair order is fixed: for permutation j and index i, directed edges
    2*(j*n+i) (i -> pi(i)) and 2*(j*n+i)+1 (back).  A fixed point becomes a
    whole-loop: its two orientations stay distinct.
    """
    edges, inv = [], []
    for pi in perms:
        for i in range(n):
            k = len(edges)
            edges.append((i, pi[i]))
            edges.append((pi[i], i))
            inv.extend([k + 1, k])
    return build_graph(n, edges, inv)


def sample_permutation_model(n, d, seed):
    """d-regular graph on n vertices from d/2 uniform permutations."""
    if d % 2 != 0 or d < 4:
        raise InvalidParams("perm model needs even d >= 4")
    if n < 1:
        raise InvalidParams("perm model needs n >= 1")
    stream = SeedStream(seed)
    perms = [stream.permutation(n) for _ in range(d // 2)]
    return _permutations_to_graph(n, perms)


def sample_single_cycle_model(n, d, seed):
    """Like the permutation model but every permutation is one n-cycle."""
    if d % 2 != 0 or d < 4:
        raise InvalidParams("cycle model needs even d >= 4")
    if n < 2:
        raise InvalidParams("cycle model needs n >= 2")
    stream = SeedStream(seed)
    perms = [stream.single_cycle(n) for _ in range(d // 2)]
    return _permutations_to_graph(n, perms)


def sample_matching_model(n, d, seed):
    """d-regular graph on n vertices from d uniform perfect matchings.

    Odd n has no perfect matching; that case is served by sample_cover
    over a bouquet of d half-loops.
    """
    if n < 2 or n % 2 != 0:
        raise InvalidParams("match model needs even n >= 2")
    if d < 3:
        raise InvalidParams("match model needs d >= 3")
    stream = SeedStream(seed)
    edges, inv = [], []
    for _ in range(d):
        m = stream.perfect_matching(n)
        for i in range(n):
            if i < m[i]:
                k = len(edges)
                edges.append((i, m[i]))
                edges.append((m[i], i))
                inv.extend([k + 1, k])
    return build_graph(n, edges, inv)


def build_bouquet(whole_loops, half_loops):
    """One vertex with the stated loops; degree 2*whole + half."""
    edges, inv = [], []
    for _ in range(whole_loops):
        k = len(edges)
        edges.append((0, 0))
        edges.append((0, 0))
        inv.extend([k + 1, k])
    for _ in range(half_loops):
        k = len(edges)
        edges.append((0, 0))
        inv.append(k)
    return build_graph(1, edges, inv)


def sample_cover(base, n, seed):
    """Uniform random degree-n cover of an arbitrary base graph.

    One orientation per non-loop pair gets a uniform permutation and its
    opposite the inverse; each half-loop gets a uniform perfect matching
    (n even) or an involution with one uniform fixed point (n odd, the
    fixed point lifting to a half-loop).

    Total vertex (v, sheet i) has index v*n + i; total directed edge
    (base edge e, sheet i) has index e*n + i, so fibres are contiguous.
    """
    if n < 1:
        raise InvalidParams("cover degree must be >= 1")
    stream = SeedStream(seed)
    m = base.directed_edge_count
    inv_b = base.involution

    # sigma[e][i]: sheet reached from sheet i along base edge e
    sigma = [None] * m
    for e in range(m):
        opp = int(inv_b[e])
        if sigma[e] is not None:
            continue
        if opp == e:
            if n % 2 == 0:
                sigma[e] = stream.perfect_matching(n)
            else:
                sigma[e] = stream.near_perfect_matching(n)
        else:
            pi = stream.permutation(n)
            sigma[e] = pi
            inv_pi = [0] * n
            for i, x in enumerate(pi):
                inv_pi[x] = i
            sigma[opp] = inv_pi

    edges, inv, edge_map = [], [], []
    for e in range(m):
        t, h = int(base.tails[e]), int(base.heads[e])
        opp = int(inv_b[e])
        pi = sigma[e]
        for i in range(n):
            edges.append((t * n + i, h * n + pi[i]))
            edge_map.append(e)
            if opp == e:
                # lift of a half-loop: pairs sheets i and pi(i); a fixed
                # point stays a half-loop upstairs
                inv.append(e * n + pi[i])
            else:
                inv.append(opp * n + pi[i])
    total = build_graph(base.vertex_count * n, edges, inv)
    vertex_map = np.arange(base.vertex_count * n, dtype=np.int64) // n
    return CoveringMap(
        base=base,
        total=total,
        vertex_map=vertex_map,
        edge_map=np.asarray(edge_map, dtype=np.int64),
        degree=n,
    )


def validate_cover(c):
    """Check the covering-map invariants; raises AssertionError on failure."""
    base, total = c.base, c.total
    n = c.degree
    vm, em = c.vertex_map, c.edge_map
    assert len(vm) == base.vertex_count * n
    assert len(em) == base.directed_edge_count * n
    # fibre sizes
    assert np.all(np.bincount(vm, minlength=base.vertex_count) == n)
    assert np.all(np.bincount(em, minlength=base.directed_edge_count) == n)
    # commutes with tails, heads, involution
    assert np.array_equal(vm[total.tails], base.tails[em])
    assert np.array_equal(vm[total.heads], base.heads[em])
    assert np.array_equal(em[total.involution], base.involution[em])
    # local isomorphism: out-edges at w map bijectively to out-edges at vm(w)
    for w in range(total.vertex_count):
        out_w = np.nonzero(total.tails == w)[0]
        base_out = np.nonzero(base.tails == vm[w])[0]
        assert sorted(em[out_w].tolist()) == sorted(base_out.tolist())
    return True
