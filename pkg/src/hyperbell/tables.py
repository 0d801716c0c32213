"""Reproduction of the traced-qubit violation tables (N=12 4-uniform, N=11 3-uniform)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bell import SEPARABILITY_BOUND, best_sign_value
from .dyadic import Dyadic
from .hypergraph import complete_k_uniform
from .statevec import build_state


@dataclass(frozen=True)
class TableRow:
    k: int
    parity: str
    value: Dyadic
    classical_bound: Optional[int]
    separability_bound: Optional[float]

    @property
    def ratio(self) -> float:
        bound = self.classical_bound if self.classical_bound is not None else self.separability_bound
        return float(self.value) / bound

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "parity": self.parity,
            "quantum_value": str(self.value),
            "quantum_value_decimal": float(self.value),
            "classical_bound": self.classical_bound,
            "separability_bound": self.separability_bound,
            "ratio": self.ratio,
        }


# (k traced, parity, Bell row?) -- parity chosen per row to match the reported values
_TABLE7 = [(0, "even", True), (1, "odd", True), (2, "odd", True), (3, "odd", False), (4, "odd", False), (5, "odd", False)]
_TABLE9 = [(0, "even"), (1, "odd"), (2, "odd"), (3, "odd"), (4, "odd")]


def table7() -> list[TableRow]:
    n = 12
    state = build_state(complete_k_uniform(n, 4))
    rows = []
    for k, parity, bell_row in _TABLE7:
        value = best_sign_value(state, k, parity)
        if bell_row:
            rows.append(TableRow(k, parity, value, 2 ** ((n - k) // 2), None))
        else:
            rows.append(TableRow(k, parity, value, None, SEPARABILITY_BOUND))
    return rows


def table9() -> list[TableRow]:
    n = 11
    state = build_state(complete_k_uniform(n, 3))
    return [TableRow(k, p, best_sign_value(state, k, p), None, SEPARABILITY_BOUND) for k, p in _TABLE9]


TABLES = {"7": table7, "9": table9}


def sig6(x: float) -> str:
    """Six significant digits, trailing zeros dropped."""
    if x == 0 or not math.isfinite(x):
        return str(x)
    return f"{x:.6g}"


def fraction_str(value) -> str:
    if isinstance(value, Dyadic):
        return str(value)
    return str(Fraction(value))
