"""Hybrid local/nonsignalling polytope for three parties and LP membership.

Behaviors are flattened as ``setting_index * 2**n + outcome_index`` with
settings X=1, Z=0 and outcomes +=0, -=1, party 0 the most significant bit
(see :func:`hyperbell.statevec.setting_index`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .hypergraph import Hypergraph
from .statevec import Behavior, behavior_table, build_state

DEFAULT_MEMBER_TOL = 1e-7
DEFAULT_BISECT_TOL = 1e-4


class PolytopeError(RuntimeError):
    pass


@dataclass(frozen=True)
class Vertex:
    parties: int
    entries: tuple[Fraction, ...]

    def vector(self) -> np.ndarray:
        return np.array([float(v) for v in self.entries])

    def prob(self, settings: Sequence[int], outcomes: Sequence[int]) -> Fraction:
        """Entry for setting bits (X=1) and outcome bits (-=1), party 0 first."""
        s = o = 0
        for b in settings:
            s = s << 1 | b
        for b in outcomes:
            o = o << 1 | b
        return self.entries[(s << self.parties) + o]


def _table_to_vertex(n: int, prob) -> Vertex:
    entries = []
    for s in product((0, 1), repeat=n):
        for o in product((0, 1), repeat=n):
            entries.append(Fraction(prob(s, o)))
    return Vertex(n, tuple(entries))


def _deterministic_boxes():
    # f = (outcome at Z, outcome at X)
    return list(product((0, 1), repeat=2))


def ns_vertices_2party() -> list[Vertex]:
    """16 local deterministic boxes followed by the 8 PR boxes."""
    out = []
    for fa, fb in product(_deterministic_boxes(), repeat=2):
        out.append(
            _table_to_vertex(2, lambda s, o, fa=fa, fb=fb: int(o[0] == fa[s[0]] and o[1] == fb[s[1]]))
        )
    for alpha, beta, gamma in product((0, 1), repeat=3):

        def pr(s, o, alpha=alpha, beta=beta, gamma=gamma):
            x, y = s
            target = (x & y) ^ (alpha & x) ^ (beta & y) ^ gamma
            return Fraction(1, 2) if (o[0] ^ o[1]) == target else 0

        out.append(_table_to_vertex(2, pr))
    return out


def local_vertices(n: int = 3) -> list[Vertex]:
    """All ``4**n`` fully local deterministic vertices."""
    out = []
    for fs in product(_deterministic_boxes(), repeat=n):
        out.append(
            _table_to_vertex(n, lambda s, o, fs=fs: int(all(o[i] == fs[i][s[i]] for i in range(n))))
        )
    return out


def hybrid_vertices_3party() -> list[Vertex]:
    """Vertices of the three splits ``A|BC``, ``B|AC``, ``C|AB`` (96 each, 288 in total)."""
    ns = ns_vertices_2party()
    out = []
    for single in range(3):
        pair = [q for q in range(3) if q != single]
        for f in _deterministic_boxes():
            for v in ns:

                def prob(s, o, f=f, v=v, single=single, pair=pair):
                    if o[single] != f[s[single]]:
                        return 0
                    return v.prob((s[pair[0]], s[pair[1]]), (o[pair[0]], o[pair[1]]))

                out.append(_table_to_vertex(3, prob))
    return out


def is_nonsignalling(v: Vertex) -> bool:
    """Every subset's marginal is independent of the complementary settings."""
    n = v.parties
    for keep in product((0, 1), repeat=n):
        kept = [i for i in range(n) if keep[i]]
        if len(kept) == n:
            continue
        marginals: dict = {}
        for s in product((0, 1), repeat=n):
            for ok in product((0, 1), repeat=len(kept)):
                total = Fraction(0)
                for o in product((0, 1), repeat=n):
                    if all(o[q] == b for q, b in zip(kept, ok)):
                        total += v.prob(s, o)
                key = (tuple(s[q] for q in kept), ok)
                if marginals.setdefault(key, total) != total:
                    return False
    return True


# LP -------------------------------------------------------------------------


def maximize(c: np.ndarray, A: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray]:
    """``max c.x`` subject to ``A x <= b`` with free variables."""
    res = linprog(
        -c,
        A_ub=A,
        b_ub=b,
        bounds=[(None, None)] * len(c),
        method="highs",
        options={"primal_feasibility_tolerance": 1e-9, "dual_feasibility_tolerance": 1e-9},
    )
    if res.status == 3:
        raise AssertionError("membership LP reported unbounded despite the objective cap")
    if res.status != 0:
        raise PolytopeError(f"LP solver failed: {res.message}")
    return -res.fun, res.x


@dataclass(frozen=True)
class LPOutcome:
    status: str  # "member" or "outside"
    violation: float
    lambda_: np.ndarray
    bound_C: float

    @property
    def member(self) -> bool:
        return self.status == "member"

    def to_dict(self) -> dict:
        return {"lambda": [float(v) for v in self.lambda_], "C": float(self.bound_C)}


def _as_vector(p) -> np.ndarray:
    if isinstance(p, (Behavior, Vertex)):
        return p.vector()
    return np.asarray(p, dtype=float)


def lp_membership(p, vertices: Sequence[Vertex], tolerance: float = DEFAULT_MEMBER_TOL) -> LPOutcome:
    """Find ``(lambda, C)`` maximizing ``lambda.p - C`` with ``lambda.v <= C`` on all vertices.

    The objective is capped at 1; an optimum of 0 means ``p`` is in the hull.
    """
    pv = _as_vector(p)
    V = np.array([v.vector() for v in vertices])
    if V.shape[1] != pv.size:
        raise PolytopeError(f"behavior has {pv.size} entries, vertices have {V.shape[1]}")
    d = pv.size
    c = np.append(pv, -1.0)
    A = np.vstack([np.hstack([V, -np.ones((len(V), 1))]), c])
    b = np.append(np.zeros(len(V)), 1.0)
    value, x = maximize(c, A, b)
    status = "member" if value <= tolerance else "outside"
    return LPOutcome(status, float(value), x[:d], float(x[d]))


@dataclass(frozen=True)
class ThresholdResult:
    epsilon: float
    member_at_zero: bool
    model: str
    separating: LPOutcome | None = None

    def to_dict(self) -> dict:
        d = {"epsilon": self.epsilon, "member_at_zero": self.member_at_zero, "model": self.model}
        if self.separating is not None:
            d.update(self.separating.to_dict())
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def model_vertices(model: str) -> list[Vertex]:
    if model == "hybrid":
        return hybrid_vertices_3party()
    if model in ("full_local", "local"):
        return local_vertices(3)
    raise PolytopeError(f"unknown model {model!r}; use hybrid or full_local")


def noise_threshold(
    h: Hypergraph,
    model: str = "hybrid",
    bisect_tol: float = DEFAULT_BISECT_TOL,
    tolerance: float = DEFAULT_MEMBER_TOL,
) -> ThresholdResult:
    """Smallest white-noise weight at which the state's X/Z behavior enters the polytope.

    Bisection is valid because the set of member weights is an interval
    ending at 1 (the maximally mixed behavior is fully local).
    """
    if h.n != 3:
        raise PolytopeError("noise thresholds are implemented for three qubits")
    if bisect_tol < 1e-6:
        raise PolytopeError("bisect_tol must be at least 1e-6")
    vertices = model_vertices(model)
    p0 = behavior_table(build_state(h), 0).vector()
    uniform = np.full_like(p0, 1.0 / 8)

    def check(eps: float) -> LPOutcome:
        return lp_membership((1 - eps) * p0 + eps * uniform, vertices, tolerance)

    first = check(0.0)
    if first.member:
        return ThresholdResult(0.0, True, model)
    lo, hi = 0.0, 1.0
    witness = first
    while hi - lo > bisect_tol:
        mid = 0.5 * (lo + hi)
        out = check(mid)
        if out.member:
            hi = mid
        else:
            lo, witness = mid, out
    return ThresholdResult(0.5 * (lo + hi), False, model, witness)
