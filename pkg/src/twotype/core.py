"""Shared types: vertex types, the typed multigraph container and seeded streams.

Vertex ids are dense integers ``0..n-1`` in creation order. Types are stored
as the integers 1 and 2 so they can be used directly as column labels.
"""

from __future__ import annotations

import enum
import io
import json
import os
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

RNG_ALGORITHM = "PCG64"


class InfeasibleParametersError(ValueError):
    """Parameters admit no valid model instance (e.g. an unsatisfiable balance)."""


class EdgeListFormatError(ValueError):
    """Malformed edge-list text. ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class VertexType(enum.IntEnum):
    TYPE1 = 1
    TYPE2 = 2

    def complement(self) -> "VertexType":
        return VertexType.TYPE2 if self is VertexType.TYPE1 else VertexType.TYPE1

    @classmethod
    def parse(cls, value) -> "VertexType":
        if isinstance(value, VertexType):
            return value
        try:
            return cls(int(value))
        except (TypeError, ValueError):
            raise ValueError(f"vertex type must be 1 or 2, got {value!r}") from None


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TypedGraph:
    """Undirected vertex-typed (multi)graph.

    ``types`` holds 1 or 2 per vertex, ``edges`` is an ``(m, 2)`` integer
    array. Self-loops and repeated pairs are allowed. Arrays are frozen on
    construction so a graph can be shared read-only.

    ``meta`` carries provenance (model name, parameters, seed) that is
    written into edge-list headers.
    """

    n: int
    types: np.ndarray
    edges: np.ndarray
    multigraph: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        types = np.array(self.types, dtype=np.int8).reshape(-1)
        edges = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
        n = int(self.n)
        if n < 0:
            raise ValueError("n must be nonnegative")
        if types.shape[0] != n:
            raise ValueError(f"types has length {types.shape[0]}, expected n={n}")
        if n and not np.isin(types, (1, 2)).all():
            raise ValueError("types must be 1 or 2")
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ValueError("edge endpoint out of range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "types", _readonly(types))
        object.__setattr__(self, "edges", _readonly(edges))
        object.__setattr__(self, "multigraph", bool(self.multigraph))

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def type_counts(self) -> tuple[int, int]:
        n1 = int(np.count_nonzero(self.types == 1))
        return n1, self.n - n1

    def same_structure(self, other: "TypedGraph") -> bool:
        """Equal vertex count, types and edge list (in order)."""
        return (
            self.n == other.n
            and np.array_equal(self.types, other.types)
            and np.array_equal(self.edges, other.edges)
        )


class RngStream:
    """A seeded PCG64 stream identified by ``(seed, stream_index)``.

    The bit generator is seeded from ``SeedSequence(seed, spawn_key=(stream_index,))``,
    so replicate ``r`` of an experiment uses ``stream_index=r`` under one
    master seed and streams never overlap. A stream is single-owner: pass a
    fresh one to each replicate instead of sharing.
    """

    algorithm = RNG_ALGORITHM

    def __init__(self, seed: int, stream_index: int = 0):
        seed = int(seed)
        stream_index = int(stream_index)
        if not 0 <= seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if stream_index < 0:
            raise ValueError("stream_index must be nonnegative")
        self.seed = seed
        self.stream_index = stream_index
        seq = np.random.SeedSequence(seed, spawn_key=(stream_index,))
        self.generator = np.random.Generator(np.random.PCG64(seq))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_index={self.stream_index})"


def fresh_seed() -> int:
    """Random 63-bit seed for runs where the user supplied none (must be recorded)."""
    return int.from_bytes(os.urandom(8), "little") >> 1


class DegreeTable(NamedTuple):
    total: np.ndarray
    to_type1: np.ndarray
    to_type2: np.ndarray


def total_and_per_type_degrees(g: TypedGraph) -> DegreeTable:
    """Per-vertex total degree and number of neighbours of each type.

    A self-loop counts twice, toward the vertex's own type.
    """
    u, v = g.edges[:, 0], g.edges[:, 1]
    tu, tv = g.types[u], g.types[v]
    to1 = np.bincount(u[tv == 1], minlength=g.n) + np.bincount(v[tu == 1], minlength=g.n)
    to2 = np.bincount(u[tv == 2], minlength=g.n) + np.bincount(v[tu == 2], minlength=g.n)
    to1 = to1.astype(np.int64)
    to2 = to2.astype(np.int64)
    return DegreeTable(to1 + to2, to1, to2)


# -- edge-list text format ---------------------------------------------------
#
#   # n=<n> model=<name> seed=<seed>
#   # key=value ...          (optional provenance lines)
#   v <id> <type>            one per vertex, ids in order
#   e <id1> <id2>            one per edge, in edge-list order


def format_edge_list(g: TypedGraph, extra_header: dict | None = None) -> str:
    meta = dict(g.meta)
    model = meta.get("model", "unknown")
    seed = meta.get("seed", "none")
    lines = [f"# n={g.n} model={model} seed={seed}"]
    lines.append(f"# multigraph={int(g.multigraph)}")
    info = {k: v for k, v in meta.items() if k not in ("model", "seed")}
    if extra_header:
        info.update(extra_header)
    for key in sorted(info):
        lines.append(f"# {key}={json.dumps(info[key], sort_keys=True)}")
    buf = io.StringIO()
    buf.write("\n".join(lines))
    buf.write("\n")
    if g.n:
        buf.write("\n".join(f"v {i} {t}" for i, t in enumerate(g.types.tolist())))
        buf.write("\n")
    if g.num_edges:
        buf.write("\n".join(f"e {a} {b}" for a, b in g.edges.tolist()))
        buf.write("\n")
    return buf.getvalue()


def write_edge_list(g: TypedGraph, path, extra_header: dict | None = None) -> None:
    text = format_edge_list(g, extra_header)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _parse_header(line: str, lineno: int) -> dict:
    fields = {}
    for tok in line[1:].split():
        if "=" not in tok:
            raise EdgeListFormatError(f"bad header token {tok!r}", lineno)
        k, v = tok.split("=", 1)
        fields[k] = v
    missing = {"n", "model", "seed"} - fields.keys()
    if missing:
        raise EdgeListFormatError(f"header missing {sorted(missing)}", lineno)
    return fields


def parse_edge_list(text: str) -> TypedGraph:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise EdgeListFormatError("missing '# n=... model=... seed=...' header", 1)
    head = _parse_header(lines[0], 1)
    try:
        n = int(head["n"])
    except ValueError:
        raise EdgeListFormatError(f"n is not an integer: {head['n']!r}", 1) from None
    meta: dict = {"model": head["model"]}
    seed = head["seed"]
    meta["seed"] = int(seed) if seed.lstrip("-").isdigit() else seed
    multigraph = False
    types = np.empty(n, dtype=np.int8)
    seen = 0
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if not sep:
                continue
            if key == "multigraph":
                multigraph = value == "1"
            else:
                try:
                    meta[key] = json.loads(value)
                except json.JSONDecodeError:
                    meta[key] = value
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("v", "e"):
            raise EdgeListFormatError(f"expected 'v <id> <type>' or 'e <a> <b>', got {line!r}", lineno)
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise EdgeListFormatError(f"non-integer field in {line!r}", lineno) from None
        if parts[0] == "v":
            if edges:
                raise EdgeListFormatError("vertex line after edge lines", lineno)
            if a != seen:
                raise EdgeListFormatError(f"vertex id {a} out of order (expected {seen})", lineno)
            if seen >= n:
                raise EdgeListFormatError(f"more than n={n} vertex lines", lineno)
            if b not in (1, 2):
                raise EdgeListFormatError(f"vertex type must be 1 or 2, got {b}", lineno)
            types[seen] = b
            seen += 1
        else:
            if not (0 <= a < n and 0 <= b < n):
                raise EdgeListFormatError(f"edge endpoint out of range 0..{n - 1}", lineno)
            edges.append((a, b))
    if seen != n:
        raise EdgeListFormatError(f"found {seen} vertex lines, header says n={n}", len(lines))
    return TypedGraph(n, types, np.array(edges, dtype=np.int64).reshape(-1, 2), multigraph, meta)


def read_edge_list(path) -> TypedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())
