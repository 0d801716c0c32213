"""Deterministic local hidden-variable models for two settings (X, Z) per party.

A deterministic assignment fixes one outcome per party and setting. It is
encoded as a ``2n``-bit integer: bits ``0..n-1`` hold the X outcomes and bits
``n..2n-1`` the Z outcomes (bit 1 means outcome -1). Any expression whose
terms factor into an X-part and a Z-part can then be evaluated over all
``4**n`` assignments as a ``2**n x 2**n`` matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import Hypergraph, single_edge

MAX_HARDY_PARTIES = 12
MAX_BRUTE_PARTIES = 10

Event = tuple[str, str]  # (settings over X/Z, outcomes over +/-)


class LHVError(ValueError):
    pass


@dataclass(frozen=True)
class DeterministicAssignment:
    x_outcomes: tuple[int, ...]
    z_outcomes: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.x_outcomes)

    @classmethod
    def from_int(cls, code: int, n: int) -> DeterministicAssignment:
        xs = tuple(-1 if code >> i & 1 else 1 for i in range(n))
        zs = tuple(-1 if code >> (n + i) & 1 else 1 for i in range(n))
        return cls(xs, zs)

    def to_int(self) -> int:
        code = 0
        for i, r in enumerate(self.x_outcomes):
            code |= (r < 0) << i
        for i, r in enumerate(self.z_outcomes):
            code |= (r < 0) << (self.n + i)
        return code

    def outcome(self, party: int, setting: str) -> int:
        return self.x_outcomes[party] if setting == "X" else self.z_outcomes[party]

    def produces(self, event: Event) -> bool:
        settings, outcomes = event
        return all(
            s == "I" or self.outcome(i, s) == (1 if r == "+" else -1)
            for i, (s, r) in enumerate(zip(settings, outcomes))
        )

    def evaluate(self, expr) -> Fraction:
        """Value of a Bell expression under this single assignment."""
        total = Fraction(0)
        for t in expr.terms:
            if t.kind == "probability":
                total += t.coefficient * self.produces((t.layout, t.outcomes))
            else:
                v = 1
                for i, sym in enumerate(t.layout):
                    if sym != "I":
                        v *= self.outcome(i, "Z" if sym == "A" else "X")
                total += t.coefficient * v
        return total


# factorized evaluation -------------------------------------------------------


def _bits(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def _match_vector(n: int, positions: Sequence[int], values: Sequence[int]) -> np.ndarray:
    """Indicator over outcome words: True where bit positions carry the given values."""
    mask = sum(1 << p for p in positions)
    want = sum(v << p for p, v in zip(positions, values))
    return (_bits(n) & mask) == want


def _event_factors(n: int, event: Event) -> tuple[np.ndarray, np.ndarray]:
    settings, outcomes = event
    if len(settings) != n or len(outcomes) != n:
        raise LHVError(f"event {event} does not cover {n} parties")
    xp = [i for i, s in enumerate(settings) if s == "X"]
    zp = [i for i, s in enumerate(settings) if s == "Z"]
    bit = [0 if r == "+" else 1 for r in outcomes]
    return (
        _match_vector(n, xp, [bit[i] for i in xp]),
        _match_vector(n, zp, [bit[i] for i in zp]),
    )


def _term_factors(n: int, term) -> tuple[np.ndarray, np.ndarray]:
    if term.kind == "probability":
        fx, fz = _event_factors(n, (term.layout, term.outcomes))
        return fx.astype(float), fz.astype(float)
    b_mask = sum(1 << i for i, s in enumerate(term.layout) if s == "B")
    a_mask = sum(1 << i for i, s in enumerate(term.layout) if s == "A")
    x = _bits(n)
    fx = 1.0 - 2.0 * (np.bitwise_count(x & b_mask) & 1)
    fz = 1.0 - 2.0 * (np.bitwise_count(x & a_mask) & 1)
    return fx, fz


def assignment_values(expr) -> tuple[np.ndarray, int]:
    """Integer matrix ``V[x, z]`` and scale ``d`` with value(x, z) = V / d."""
    n = expr.n
    if n > MAX_BRUTE_PARTIES:
        raise LHVError(f"{n} parties exceeds brute-force cap {MAX_BRUTE_PARTIES}")
    scale = lcm(*(Fraction(t.coefficient).denominator for t in expr.terms))
    coeffs = np.array([float(Fraction(t.coefficient) * scale) for t in expr.terms])
    fx = np.empty((len(expr.terms), 1 << n))
    fz = np.empty_like(fx)
    for j, t in enumerate(expr.terms):
        fx[j], fz[j] = _term_factors(n, t)
    values = (fx * coeffs[:, None]).T @ fz
    exact = np.rint(values)
    if np.abs(values - exact).max(initial=0.0) > 1e-6 or np.abs(exact).max(initial=0.0) >= 2**52:
        raise LHVError("expression too large for exact float evaluation")
    return exact.astype(np.int64), scale


def brute_classical_max(expr) -> Fraction:
    """Largest value of the expression over all ``4**n`` deterministic assignments."""
    values, scale = assignment_values(expr)
    return Fraction(int(values.max()), scale)


def brute_classical_min(expr) -> Fraction:
    values, scale = assignment_values(expr)
    return Fraction(int(values.min()), scale)


def argmax_assignment(expr) -> DeterministicAssignment:
    values, _ = assignment_values(expr)
    x, z = np.unravel_index(int(values.argmax()), values.shape)
    return DeterministicAssignment.from_int(int(x) | int(z) << expr.n, expr.n)


# Hardy arguments ------------------------------------------------------------


def hardy_check(n: int, zero_events: Iterable[Event], target: Event) -> bool:
    """True iff no deterministic model avoiding all ``zero_events`` produces ``target``."""
    if n > MAX_HARDY_PARTIES:
        raise LHVError(f"{n} parties exceeds Hardy enumeration cap {MAX_HARDY_PARTIES}")
    # group events by their X-part so the forbidden set is a union of few outer products
    groups: dict[tuple[int, int], np.ndarray] = {}
    for settings, outcomes in zero_events:
        fx, fz = _event_factors(n, (settings, outcomes))
        key = tuple(
            sum((1 << i) * bit for i, bit in enumerate(vals))
            for vals in (
                [s == "X" for s in settings],
                [s == "X" and r == "-" for s, r in zip(settings, outcomes)],
            )
        )
        if key in groups:
            groups[key] |= fz
        else:
            groups[key] = fz.copy()
    forbidden = np.zeros((1 << n, 1 << n), dtype=bool)
    x = _bits(n)
    for (xmask, xval), fz in groups.items():
        fx = (x & xmask) == xval
        forbidden[np.ix_(fx, fz)] = True
    tx, tz = _event_factors(n, target)
    return not np.any(~forbidden[np.ix_(tx, tz)])


def stabilizer_zero_events(h: Hypergraph) -> list[Event]:
    """Events the generators ``g_i = X_i C_(rest)`` forbid on the single-edge state.

    For every qubit ``i``: ``X_i=+`` with all other Z outcomes ``-``, and
    ``X_i=-`` with any other Z pattern that is not all ``-``.
    """
    if h.n < 2 or h != single_edge(h.n):
        raise LHVError("zero events are generated only for the single-hyperedge state with n >= 2")
    n = h.n
    events = []
    for i in range(n):
        settings = "".join("X" if j == i else "Z" for j in range(n))
        for rest in product("+-", repeat=n - 1):
            all_minus = all(r == "-" for r in rest)
            head = "+" if all_minus else "-"
            outcomes = "".join(rest[:i]) + head + "".join(rest[i:])
            events.append((settings, outcomes))
        # put the X=+ event first for each qubit
        events[-(1 << (n - 1)):] = sorted(events[-(1 << (n - 1)):], key=lambda e: e[1][i] != "+")
    return events


def hardy_targets(n: int) -> list[Event]:
    """X-string events with at least one ``+`` and at least two ``-``."""
    out = []
    for rs in product("+-", repeat=n):
        if rs.count("+") >= 1 and rs.count("-") >= 2:
            out.append(("X" * n, "".join(rs)))
    return out
