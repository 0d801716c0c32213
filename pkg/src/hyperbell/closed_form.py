"""Closed-form X/Z correlators of complete 3- and 4-uniform hypergraph states.

Every function returns ``<X^m Z^(n-m-t) I^t>`` with the X's on the first m
qubits (the states are permutation symmetric, so placement does not matter).
Residue classes without a known formula raise :class:`NoClosedForm`; callers
are expected to fall back to :func:`hyperbell.statevec.expectation`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dyadic import Dyadic


class NoClosedForm(LookupError):
    """The requested (uniformity, n, m) combination has no closed formula."""


@dataclass(frozen=True)
class ComplexPowerRow:
    n: int
    re: int
    im: int


def cpow_1pi(n: int) -> ComplexPowerRow:
    """Exact ``(1+i)**n`` by repeated ``(a+bi)(1+i) = (a-b) + (a+b)i``."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    a, b = 1, 0
    for _ in range(n):
        a, b = a - b, a + b
    return ComplexPowerRow(n, a, b)


def table0_row(n: int) -> tuple[int, int]:
    """Signed (Re, Im) of ``(1+i)**n`` from the residue-class lookup table."""
    r = n % 8
    if n % 2 == 0:
        h = 1 << (n // 2)
        return {0: (h, 0), 2: (0, h), 4: (-h, 0), 6: (0, -h)}[r]
    h = 1 << ((n - 1) // 2)
    return {1: (h, h), 3: (-h, h), 5: (-h, -h), 7: (h, -h)}[r]


def _pow2(e: int) -> Dyadic:
    return Dyadic(1, -e)


def corr3(n: int, m: int) -> Dyadic:
    """Complete 3-uniform state, no traced qubits."""
    if n < 3 or not 0 <= m <= n:
        raise NoClosedForm(f"3-uniform: no formula for n={n}, m={m}")
    if m == 0:
        return Dyadic(0)
    if m == n and n % 2 == 0:
        return Dyadic(0) if n % 4 == 0 else Dyadic(1)
    if m % 2 == 0 and 1 < m < n:
        return Dyadic(1, 1) if m % 4 == 2 else Dyadic(-1, 1)
    raise NoClosedForm(f"3-uniform: no formula for n={n}, m={m}")


def corr4(n: int, m: int) -> Dyadic:
    """Complete 4-uniform state, no traced qubits."""
    if n < 4 or not 1 <= m <= n:
        raise NoClosedForm(f"4-uniform: no formula for n={n}, m={m}")
    r = n % 8
    if m % 2 == 1 and r in (6, 7, 0) and n >= 6:
        if m == n:
            if r == 7:
                return Dyadic(-1)
            raise NoClosedForm(f"4-uniform: all-X correlator not given for n={n}")
        half_n = n // 2
        # (2^(h-m) + 1) / 2^(h - m//2) = 2^(m//2 - m) + 2^(m//2 - h)
        mag = _pow2(m // 2 - m) + _pow2(m // 2 - half_n)
        return mag if (m - 1) % 4 == 0 else -mag
    if m % 2 == 1 and n % 4 == 1:
        if m == n:
            return _pow2(-(n // 2))
        mag = _pow2(-((m + 1) // 2))
        return mag if (m - 1) % 4 == 0 else -mag
    if m % 2 == 0 and r in (2, 4) and m >= 2:
        if m == n:
            return _pow2(-1) + _pow2(-(n // 2))
        mag = _pow2(m // 2 - 1 - n // 2)
        return mag if (n - m) % 4 == 0 else -mag
    raise NoClosedForm(f"4-uniform: no formula for n={n}, m={m}")


def corr_traced(uniformity: int, n: int, m: int) -> Dyadic:
    """Correlator with the last of the ``n`` qubits traced out."""
    if uniformity == 4:
        return _traced4(n, m)
    if uniformity == 3:
        return _traced3(n, m)
    raise NoClosedForm(f"no traced formula for uniformity {uniformity}")


def _traced4(n: int, m: int) -> Dyadic:
    reduced = n - 1
    if m % 2 or not 2 <= m <= reduced:
        raise NoClosedForm(f"4-uniform traced: no formula for n={n}, m={m}")
    if n % 8 == 3:
        # identical to the untraced 8k+2 formula on the remaining qubits
        if m == reduced:
            return _pow2(-1) + _pow2(-(reduced // 2))
        mag = _pow2(m // 2 - 1 - reduced // 2)
        return mag if (reduced - m) % 4 == 0 else -mag
    if n % 8 == 4:
        # (1/sqrt2)^(n-m+2) with n, m even
        mag = _pow2(-((n - m + 2) // 2))
        return -mag if m % 4 == 0 else mag
    raise NoClosedForm(f"4-uniform traced: no formula for n={n}, m={m}")


def _traced3(n: int, m: int) -> Dyadic:
    if m % 2 == 0 or not 1 <= m <= n - 1 or n < 3:
        raise NoClosedForm(f"3-uniform traced: no formula for n={n}, m={m}")
    if n % 4 == 0:
        return Dyadic(0)
    mag = _pow2(-((n - 1) // 2))
    plus_first = n % 8 in (1, 2, 3)
    if (m - 1) % 4 == 0:
        return mag if plus_first else -mag
    return -mag if plus_first else mag


def closed_form(uniformity: int, n: int, m: int, traced: int = 0) -> Dyadic:
    """Dispatch to the matching lemma; ``traced`` is 0 or 1."""
    if traced == 0:
        if uniformity == 3:
            return corr3(n, m)
        if uniformity == 4:
            return corr4(n, m)
        raise NoClosedForm(f"no formula for uniformity {uniformity}")
    if traced == 1:
        return corr_traced(uniformity, n, m)
    raise NoClosedForm("closed forms cover at most one traced qubit")


def covered_cases(uniformity: int, n: int, traced: int = 0) -> list[int]:
    """All X-counts m for which :func:`closed_form` returns a value."""
    out = []
    for m in range(n + 1):
        try:
            closed_form(uniformity, n, m, traced)
        except NoClosedForm:
            continue
        out.append(m)
    return out
