"""Hypergraphs, the complete k-uniform families and their stabilizer generators.

Qubits are numbered from 0; vertex ``i`` here is vertex ``i + 1`` in the usual
1-based notation, so the three-qubit state with the single edge {1, 2, 3} is
``Hypergraph(3, [(0, 1, 2)])``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

MAX_QUBITS = 24

Edge = tuple[int, ...]


class HypergraphError(ValueError):
    pass


def _canonical_edges(edges: Iterable[Iterable[int]]) -> tuple[Edge, ...]:
    # C_e squared is the identity: edges of even multiplicity vanish
    counts = Counter(tuple(sorted(set(e))) for e in edges)
    kept = [e for e, c in counts.items() if c % 2]
    return tuple(sorted(kept, key=lambda e: (len(e), e)))


@dataclass(frozen=True, init=False)
class Hypergraph:
    n: int
    edges: tuple[Edge, ...]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if not isinstance(n, int) or isinstance(n, bool):
            raise HypergraphError(f"qubit count must be an integer, got {n!r}")
        if not 1 <= n <= MAX_QUBITS:
            raise HypergraphError(f"qubit count {n} outside [1, {MAX_QUBITS}]")
        raw = [list(e) for e in edges]
        for e in raw:
            if not e:
                raise HypergraphError("empty hyperedge")
            for v in e:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise HypergraphError(f"vertex {v!r} is not an integer")
                if not 0 <= v < n:
                    raise HypergraphError(f"vertex {v} out of range for n={n}")
            if len(set(e)) != len(e):
                raise HypergraphError(f"repeated vertex in edge {e}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", _canonical_edges(raw))

    def edge_masks(self) -> list[int]:
        return [sum(1 << v for v in e) for e in self.edges]

    def canonicalize(self) -> Hypergraph:
        return Hypergraph(self.n, self.edges)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse ``{"n": <int>, "edges": [[<int>, ...], ...]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise HypergraphError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc:
        raise HypergraphError('expected an object with keys "n" and "edges"')
    edges = doc.get("edges", [])
    if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
        raise HypergraphError('"edges" must be a list of lists')
    return Hypergraph(doc["n"], edges)


def complete_k_uniform(n: int, k: int) -> Hypergraph:
    if not 1 <= k <= n:
        raise HypergraphError(f"cardinality k={k} must satisfy 1 <= k <= n={n}")
    return Hypergraph(n, combinations(range(n), k))


def single_edge(n: int) -> Hypergraph:
    """The n-qubit state with one hyperedge covering every vertex."""
    return Hypergraph(n, [tuple(range(n))])


@dataclass(frozen=True)
class StabilizerGenerator:
    """``g_i = sign * X_i * prod(C_e)`` over the reduced edges ``e \\ {i}``."""

    qubit: int
    reduced_edges: tuple[Edge, ...]
    sign: int = 1


def stabilizer_generators(h: Hypergraph) -> list[StabilizerGenerator]:
    gens = []
    for i in range(h.n):
        reduced = []
        sign = 1
        for e in h.edges:
            if i not in e:
                continue
            rest = tuple(v for v in e if v != i)
            if rest:
                reduced.append(rest)
            else:
                sign = -sign
        gens.append(StabilizerGenerator(i, _canonical_edges(reduced), sign))
    return gens
