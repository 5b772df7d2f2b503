"""Generators for the two-type Erdos-Renyi graph, configuration model and
preferential attachment tree.

All three take a :class:`~twotype.core.RngStream` and are deterministic in
``(parameters, seed, stream_index)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numba
import numpy as np

from .analytic import ErParams, PaParams
from .core import RngStream, TypedGraph
from .degree_dist import DegreeDistribution


def _draw_types(gen: np.random.Generator, n: int, p1: float) -> np.ndarray:
    return np.where(gen.random(n) < p1, 1, 2).astype(np.int8)


def _provenance(model: str, rng: RngStream, params: dict) -> dict:
    return {"model": model, "seed": rng.seed, "stream_index": rng.stream_index, "params": params}


# -- Erdos-Renyi -----------------------------------------------------------------


def bernoulli_positions(num_trials: int, q: float, gen: np.random.Generator) -> np.ndarray:
    """Sorted indices of successes among ``num_trials`` Bernoulli(q) trials.

    Jumps between successes are geometric, so the cost is proportional to the
    number of successes rather than ``num_trials``.
    """
    if num_trials <= 0 or q <= 0:
        return np.empty(0, dtype=np.int64)
    if q >= 1:
        return np.arange(num_trials, dtype=np.int64)
    expected = num_trials * q
    chunk = int(expected + 6.0 * math.sqrt(expected) + 16)
    parts = []
    last = -1
    while True:
        pos = last + np.cumsum(gen.geometric(q, size=chunk))
        if pos[-1] >= num_trials:
            parts.append(pos[pos < num_trials])
            break
        parts.append(pos)
        last = int(pos[-1])
        chunk = max(16, chunk // 4)
    return np.concatenate(parts).astype(np.int64)


def _triangle_pairs(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map linear indices to pairs ``(i, j)`` with ``i > j`` in row-major lower-triangle order."""
    i = np.floor((1.0 + np.sqrt(1.0 + 8.0 * idx.astype(np.float64))) / 2.0).astype(np.int64)
    # Float sqrt can be off by one for very large indices.
    i -= (i * (i - 1) // 2) > idx
    i += ((i + 1) * i // 2) <= idx
    j = idx - i * (i - 1) // 2
    return i, j


def generate_er(n: int, p: ErParams, rng: RngStream) -> TypedGraph:
    """Two-type Erdos-Renyi graph on ``n`` vertices (simple graph).

    Pairs inside type i are present with probability ``min(alpha_i/n, 1)``,
    pairs across types with ``min(beta/n, 1)``, all independently.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = rng.generator
    types = _draw_types(gen, n, p.p1)
    ids1 = np.flatnonzero(types == 1)
    ids2 = np.flatnonzero(types == 2)
    blocks = []
    for ids, alpha in ((ids1, p.alpha1), (ids2, p.alpha2)):
        m = ids.size
        pos = bernoulli_positions(m * (m - 1) // 2, min(alpha / n, 1.0), gen)
        i, j = _triangle_pairs(pos)
        blocks.append(np.column_stack((ids[j], ids[i])))
    n2 = ids2.size
    pos = bernoulli_positions(ids1.size * n2, min(p.beta / n, 1.0), gen)
    blocks.append(np.column_stack((ids1[pos // max(n2, 1)], ids2[pos % max(n2, 1)])))
    edges = np.concatenate(blocks).reshape(-1, 2)
    return TypedGraph(n, types, edges, False, _provenance("er", rng, asdict(p)))


# -- configuration model ------------------------------------------------------------


@dataclass(frozen=True)
class CmGenReport:
    """Bookkeeping for half-edges erased after pairing.

    ``labels_count`` is ``(L1, L1', L2, L2')``: half-edges labelled for
    pairing within type 1, across from type 1, within type 2, across from
    type 2.
    """

    erased_halfedges: int
    erased_affected_vertices: int
    labels_count: tuple[int, int, int, int]

    def summary(self, n: int) -> str:
        l1, l1c, l2, l2c = self.labels_count
        return (
            f"labels L1={l1} L1'={l1c} L2={l2} L2'={l2c}; "
            f"erased half-edges={self.erased_halfedges}; "
            f"affected vertices={self.erased_affected_vertices} "
            f"({self.erased_affected_vertices / max(n, 1):.4%} of n)"
        )


def generate_cm(
    n: int,
    p1: float,
    F1: DegreeDistribution,
    F2: DegreeDistribution,
    xi1: float,
    xi2: float,
    rng: RngStream,
) -> tuple[TypedGraph, CmGenReport]:
    """Two-type configuration multigraph.

    Each half-edge of a type-i vertex is labelled for own-type pairing with
    probability ``xi_i`` and for cross-type pairing otherwise. Own-type pools
    are matched uniformly within themselves, cross pools against each other;
    unmatched half-edges are erased and counted in the report. Self-loops
    and multi-edges are kept.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    for name, xi in (("xi1", xi1), ("xi2", xi2)):
        if not 0 <= xi <= 1:
            raise ValueError(f"{name} must lie in [0, 1], got {xi}")
    gen = rng.generator
    types = _draw_types(gen, n, p1)
    is1 = types == 1
    degrees = np.zeros(n, dtype=np.int64)
    degrees[is1] = F1.sample(gen, int(is1.sum()))
    degrees[~is1] = F2.sample(gen, int((~is1).sum()))

    stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
    stub_is1 = is1[stubs]
    own = gen.random(stubs.size) < np.where(stub_is1, xi1, xi2)
    pool1 = stubs[stub_is1 & own]
    pool1c = stubs[stub_is1 & ~own]
    pool2 = stubs[~stub_is1 & own]
    pool2c = stubs[~stub_is1 & ~own]

    blocks = []
    erased = []
    for pool in (pool1, pool2):
        pool = gen.permutation(pool)
        half = pool.size // 2
        blocks.append(np.column_stack((pool[0 : 2 * half : 2], pool[1 : 2 * half : 2])))
        erased.append(pool[2 * half :])
    a = gen.permutation(pool1c)
    b = gen.permutation(pool2c)
    m = min(a.size, b.size)
    blocks.append(np.column_stack((a[:m], b[:m])))
    erased.extend((a[m:], b[m:]))

    erased_stubs = np.concatenate(erased)
    report = CmGenReport(
        erased_halfedges=int(erased_stubs.size),
        erased_affected_vertices=int(np.unique(erased_stubs).size),
        labels_count=(int(pool1.size), int(pool1c.size), int(pool2.size), int(pool2c.size)),
    )
    params = {
        "p1": p1,
        "F1": F1.describe(),
        "F2": F2.describe(),
        "xi1": xi1,
        "xi2": xi2,
    }
    g = TypedGraph(n, types, np.concatenate(blocks).reshape(-1, 2), True, _provenance("cm", rng, params))
    return g, report


# -- preferential attachment ---------------------------------------------------------

PA_CHUNK = 1 << 22


@numba.njit(cache=True)
def _pa_steps(arrival_is1, target_is1, u, buf, n1, n2, targets, first_id):
    # buf holds one entry per edge endpoint: type-1 endpoints grow from the
    # left, type-2 endpoints from the right. A uniform draw from a type's
    # block is a draw proportional to degree within that type.
    cap = buf.size
    for s in range(arrival_is1.size):
        if target_is1[s]:
            k = int(u[s] * n1)
            if k >= n1:
                k = n1 - 1
            tgt = buf[k]
            buf[n1] = tgt
            n1 += 1
        else:
            k = int(u[s] * n2)
            if k >= n2:
                k = n2 - 1
            tgt = buf[cap - 1 - k]
            buf[cap - 1 - n2] = tgt
            n2 += 1
        targets[s] = tgt
        v = first_id + s
        if arrival_is1[s]:
            buf[n1] = v
            n1 += 1
        else:
            buf[cap - 1 - n2] = v
            n2 += 1
    return n1, n2


def generate_pa(t: int, p: PaParams, rng: RngStream) -> TypedGraph:
    """Two-type preferential attachment tree at time ``t`` (``t + 1`` vertices, ``t`` edges).

    Time 1 is a type-1 vertex (id 0) joined to a type-2 vertex (id 1). The
    vertex arriving at time ``s >= 2`` gets id ``s``, is type 1 with
    probability ``p1``, picks its own type with probability ``theta_i``
    (the other type otherwise) and then a vertex of that type with
    probability proportional to degree. The arriving vertex's own endpoint
    is added only after its target is drawn.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    gen = rng.generator
    idx_dtype = np.int32 if 2 * t < np.iinfo(np.int32).max else np.int64
    buf = np.empty(2 * t, dtype=idx_dtype)
    buf[0], buf[-1] = 0, 1
    n1 = n2 = 1
    types = np.empty(t + 1, dtype=np.int8)
    types[0], types[1] = 1, 2
    targets = np.empty(t - 1, dtype=idx_dtype)
    for lo in range(0, t - 1, PA_CHUNK):
        size = min(PA_CHUNK, t - 1 - lo)
        arrival_is1 = gen.random(size) < p.p1
        stays = gen.random(size) < np.where(arrival_is1, p.theta1, p.theta2)
        # Target is type 1 exactly when (arrival is type 1) == (stays with own type).
        target_is1 = arrival_is1 == stays
        u = gen.random(size)
        n1, n2 = _pa_steps(arrival_is1, target_is1, u, buf, n1, n2, targets[lo : lo + size], lo + 2)
        types[lo + 2 : lo + 2 + size] = np.where(arrival_is1, 1, 2)
    assert n1 + n2 == 2 * t
    del buf
    edges = np.empty((t, 2), dtype=np.int64)
    edges[0] = (0, 1)
    edges[1:, 0] = np.arange(2, t + 1)
    edges[1:, 1] = targets
    return TypedGraph(t + 1, types, edges, False, _provenance("pa", rng, asdict(p)))
