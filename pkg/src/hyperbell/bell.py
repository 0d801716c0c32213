"""Bell, Hardy, Svetlichny and separability expressions for X/Z measurements.

Expressions are plain data: a list of probability terms ``P(r|s)`` and
correlator terms over the symbols ``A`` and ``B`` (``I`` for an unmeasured
party). At evaluation time ``A`` is measured as Z and ``B`` as X.

Families
--------
``hardy3``, ``hardyN``
    Stabilizer zero-events of the single-hyperedge state with coefficient +1,
    minus every all-X event with at least one ``+`` and two ``-``. LHV value >= 0.
``svetlichny3``
    The zero-events plus ``P(---|XXX) - P(---|ZZZ)``; >= 0 for hybrid models.
``mermin_even``
    Even numbers ``2j`` of B, all placements, coefficient ``(-1)**(j+1)``.
``mermin_odd``
    Odd numbers ``b`` of B, coefficient ``(-1)**((b-1)//2)``.
``separability``
    Same terms as ``mermin_odd``; compared against the separability bound sqrt(2).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from .dyadic import Dyadic, as_fraction
from .hypergraph import single_edge
from .lhv import hardy_targets, stabilizer_zero_events
from .statevec import SignState, expectation, outcome_distribution

FAMILIES = ("hardy3", "svetlichny3", "hardyN", "mermin_even", "mermin_odd", "separability")
SEPARABILITY_BOUND = math.sqrt(2)


class BellError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    kind: str  # "probability" or "correlator"
    coefficient: Fraction
    layout: str
    outcomes: Optional[str] = None

    def __post_init__(self):
        if self.kind == "probability":
            if self.outcomes is None or len(self.outcomes) != len(self.layout):
                raise BellError("probability term needs one outcome per party")
            if set(self.layout) - set("XZ") or set(self.outcomes) - set("+-"):
                raise BellError(f"bad probability term {self.layout}|{self.outcomes}")
        elif self.kind == "correlator":
            if set(self.layout) - set("ABI"):
                raise BellError(f"bad correlator layout {self.layout!r}")
        else:
            raise BellError(f"unknown term kind {self.kind!r}")

    def to_dict(self) -> dict:
        c = Fraction(self.coefficient)
        d = {"kind": self.kind, "coeff": [c.numerator, c.denominator], "layout": self.layout}
        if self.outcomes is not None:
            d["outcomes"] = self.outcomes
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Term:
        num, den = d["coeff"]
        return cls(d["kind"], Fraction(num, den), d["layout"], d.get("outcomes"))


@dataclass(frozen=True)
class BellExpression:
    family: str
    n: int
    terms: tuple[Term, ...]
    classical_bound: Optional[Fraction] = None
    bound_source: Optional[str] = None  # "formula" or "brute-force"
    direction: str = "max"  # "max": LHV value <= bound; "geq0": LHV value >= bound
    traced: int = 0

    def __post_init__(self):
        if not self.terms:
            raise BellError("expression has no terms")
        for t in self.terms:
            if len(t.layout) != self.n:
                raise BellError(f"term layout {t.layout!r} does not match n={self.n}")

    def with_bound(self, bound: Fraction, source: str) -> BellExpression:
        return BellExpression(
            self.family, self.n, self.terms, Fraction(bound), source, self.direction, self.traced
        )

    def to_dict(self) -> dict:
        bound = None
        if self.classical_bound is not None:
            b = Fraction(self.classical_bound)
            bound = [b.numerator, b.denominator]
        return {
            "family": self.family,
            "n": self.n,
            "traced": self.traced,
            "direction": self.direction,
            "terms": [t.to_dict() for t in self.terms],
            "classical_bound": bound,
            "bound_source": self.bound_source,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> BellExpression:
        bound = d.get("classical_bound")
        return cls(
            d.get("family", "custom"),
            d["n"],
            tuple(Term.from_dict(t) for t in d["terms"]),
            None if bound is None else Fraction(bound[0], bound[1]),
            d.get("bound_source"),
            d.get("direction", "max"),
            d.get("traced", 0),
        )

    @classmethod
    def from_json(cls, text: str) -> BellExpression:
        return cls.from_dict(json.loads(text))


# construction ---------------------------------------------------------------


def _hardy_terms(n: int) -> list[Term]:
    plus = [Term("probability", Fraction(1), s, r) for s, r in stabilizer_zero_events(single_edge(n))]
    minus = [Term("probability", Fraction(-1), s, r) for s, r in hardy_targets(n)]
    return plus + minus


def _correlator_terms(n: int, active: int, b_counts, coefficient) -> list[Term]:
    terms = []
    pad = "I" * (n - active)
    for b in b_counts:
        c = Fraction(coefficient(b))
        for pos in combinations(range(active), b):
            chosen = set(pos)
            layout = "".join("B" if i in chosen else "A" for i in range(active)) + pad
            terms.append(Term("correlator", c, layout))
    return terms


def build_expression(family: str, n: int, traced: int = 0) -> BellExpression:
    """Expand a named family on ``n`` parties; the last ``traced`` parties carry I."""
    if family not in FAMILIES:
        raise BellError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if n < 2:
        raise BellError("expressions need at least 2 parties")
    if family in ("hardy3", "svetlichny3") and n != 3:
        raise BellError(f"{family} is defined for n=3 only")
    if not 0 <= traced < n:
        raise BellError(f"traced={traced} must satisfy 0 <= traced < n")
    active = n - traced

    if family in ("hardy3", "hardyN", "svetlichny3"):
        if traced:
            raise BellError(f"{family} does not support traced parties")
        if family == "svetlichny3":
            terms = [t for t in _hardy_terms(3) if t.coefficient > 0]
            terms += [
                Term("probability", Fraction(1), "XXX", "---"),
                Term("probability", Fraction(-1), "ZZZ", "---"),
            ]
        else:
            terms = _hardy_terms(n)
        return BellExpression(family, n, tuple(terms), Fraction(0), "formula", "geq0")

    if family == "mermin_even":
        terms = _correlator_terms(n, active, range(0, active + 1, 2), lambda b: (-1) ** (b // 2 + 1))
    else:
        terms = _correlator_terms(n, active, range(1, active + 1, 2), lambda b: (-1) ** ((b - 1) // 2))
    if family == "separability":
        return BellExpression(family, n, tuple(terms), None, None, "max", traced)
    return BellExpression(
        family, n, tuple(terms), Fraction(2 ** (active // 2)), "formula", "max", traced
    )


# evaluation -----------------------------------------------------------------


def _to_exact(value: Fraction):
    den = value.denominator
    return Dyadic.from_fraction(value) if den & (den - 1) == 0 else value


def quantum_value(expr: BellExpression, state: SignState):
    """Exact ``sum coefficient * <term>`` on the state (A -> Z, B -> X)."""
    if expr.n != state.n:
        raise BellError(f"expression on {expr.n} parties vs state on {state.n} qubits")
    total = Fraction(0)
    dists: dict[str, dict] = {}
    for t in expr.terms:
        if t.kind == "probability":
            if t.layout not in dists:
                dists[t.layout] = outcome_distribution(state, t.layout)
            p = dists[t.layout][t.outcomes]
        else:
            p = expectation(state, t.layout.replace("A", "Z").replace("B", "X"))
        total += Fraction(t.coefficient) * p.to_fraction()
    return _to_exact(total)


def classical_bound_formula(family: str, n: int, traced: int = 0) -> Fraction:
    """Local bound by formula: ``2**floor(n'/2)`` on the ``n' = n - traced`` measured parties."""
    if family in ("mermin_even", "mermin_odd"):
        return Fraction(2 ** ((n - traced) // 2))
    if family in ("hardy3", "hardyN", "svetlichny3"):
        return Fraction(0)
    if family == "separability":
        raise BellError("separability has no local bound; its separable-state bound is sqrt(2)")
    raise BellError(f"unknown family {family!r}")


def symmetric_correlator(state: SignState, m: int, traced: int = 0) -> Dyadic:
    """``<X^m Z^(n-traced-m) I^traced>`` with the X's on the leading qubits."""
    n = state.n
    return expectation(state, "X" * m + "Z" * (n - traced - m) + "I" * traced)


def best_sign_value(state: SignState, k_traced: int, parity: str) -> Dyadic:
    """Optimal-sign full-correlation value ``sum_m C(n-k, m) |<X^m Z.. I^k>|``.

    The sum runs over ``1 <= m <= n-k`` of the given parity ("odd"/"even").
    Assumes a permutation-symmetric state (complete uniform hypergraphs).
    """
    n = state.n
    if not 0 <= k_traced < n:
        raise BellError(f"k_traced={k_traced} must satisfy 0 <= k < n={n}")
    if parity not in ("odd", "even"):
        raise BellError("parity must be 'odd' or 'even'")
    active = n - k_traced
    start = 1 if parity == "odd" else 2
    total = Dyadic(0)
    for m in range(start, active + 1, 2):
        total = total + comb(active, m) * abs(symmetric_correlator(state, m, k_traced))
    return total


def visibility(bell_value, n: int) -> Fraction:
    """Phase super-resolution visibility ``value / 2**(n-1)``."""
    return as_fraction(bell_value) / 2 ** (n - 1)


@dataclass(frozen=True)
class RatioReport:
    variant: str
    n: int
    quantum: float
    classical: float
    ratio: float
    asymptotic: float
    extra: dict = field(default_factory=dict)


def ratio_formulas(n: int, variant: str) -> RatioReport:
    """Closed-form quantum values and quantum/classical ratios for 4-uniform states.

    ``obs6``: n = 8k+3, even-B operator on the first M = n-1 qubits.
    ``obs7``: n = 8k+4 after losing one qubit (M = n-1 measured qubits).
    """
    r = 1 / math.sqrt(2)
    M = n - 1
    if variant == "obs6":
        if n % 8 != 3:
            raise BellError("obs6 formula assumes n = 8k+3")
        q = 0.25 * ((1 + r) ** M - (1 - r) ** M) - r ** (M + 2)
        c = 2.0 ** (M // 2)
        asym = (1 + r) ** (n - 1) / math.sqrt(2) ** (n + 3)
        return RatioReport(variant, n, q, c, q / c, asym)
    if variant == "obs7":
        if n % 8 != 4:
            raise BellError("obs7 formula assumes n = 8k+4")
        q = (1 / (4 * math.sqrt(2))) * ((1 + r) ** M - (1 - r) ** M) - r ** (M + 3)
        c = 2.0 ** (M // 2)
        asym = (1 + r) ** (n - 1) / math.sqrt(2) ** (n + 3)
        return RatioReport(
            variant, n, q, c, q / c, asym, {"traced_over_untraced_limit": 1 / (math.sqrt(2) + 1)}
        )
    raise BellError(f"unknown ratio variant {variant!r}; use obs6 or obs7")
